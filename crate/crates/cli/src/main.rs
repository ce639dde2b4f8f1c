//! `hta`: spectra, fits, phase-space grids and parameter scans for heavy
//! quarkonium in the half-transform ansatz.

mod checks;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use quarkonium::dataset::{Dataset, MesonRecord};
use quarkonium::fitting::{
    default_seeds, fit, meson_table, seeds_around, FitOptions, FitResult, MesonTable, ParamSource,
};
use quarkonium::hta::{branch_scan, CornellParams, ScanParam, SpectroscopicLabel, Variant};
use quarkonium::wavefunction::{density_grid, normalize_b, Axis, WaveParams};
use quarkonium::Error;

use output::{text, Csv};

#[derive(Parser)]
#[command(
    name = "hta",
    version,
    about = "Heavy quarkonium spectra and phase-space wave functions"
)]
struct Cli {
    /// Meson data file (JSON); the bundled data set when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Formulation of the energy levels.
    #[arg(long, global = true, default_value = "real7")]
    variant: Variant,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Significant digits of floats in CSV output.
    #[arg(long, global = true, default_value_t = 17, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mass spectrum of each meson with mass-versus-n and mass-versus-l curves.
    Spectrum(SpectrumArgs),
    /// Fit (a, b, delta) to the experimental levels.
    Fit(FitArgs),
    /// Phase-space density of one level on an (r, p_r) grid.
    Grid(GridArgs),
    /// Mass of one level while one parameter varies, on both branches.
    Scan(ScanArgs),
    /// Run the cross-validation suites.
    Check(CheckArgs),
}

#[derive(Args)]
struct ParamOverrides {
    /// Override the Coulomb coefficient.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Override the linear strength.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Override the expansion point.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Restrict to one meson label.
    #[arg(long)]
    meson: Option<String>,
    #[command(flatten)]
    params: ParamOverrides,
    /// Test hook: every binding energy is zero.
    #[arg(long, hide = true)]
    zero_energy_stub: bool,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    meson: Option<String>,
    /// Also start from the published parameters and their neighbours.
    #[arg(long)]
    seed_from_paper: bool,
    /// Fit every level with an experimental mass instead of the configured set.
    #[arg(long)]
    all_levels: bool,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value = "cc")]
    meson: String,
    /// Spectroscopic label such as 1S or 2P.
    #[arg(long, default_value = "1S")]
    label: SpectroscopicLabel,
    #[command(flatten)]
    params: ParamOverrides,
    #[arg(long, default_value_t = 0.01)]
    r_min: f64,
    #[arg(long, default_value_t = 3.0)]
    r_max: f64,
    #[arg(long, default_value_t = 60)]
    r_count: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    p_max: f64,
    #[arg(long, default_value_t = 11)]
    p_count: usize,
    /// Keep B = 1 instead of normalizing.
    #[arg(long)]
    unit_norm: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value = "cc")]
    meson: String,
    #[arg(long, default_value = "1S")]
    label: SpectroscopicLabel,
    /// Parameter to vary: a, b or delta.
    #[arg(long)]
    param: ScanParam,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 101)]
    steps: usize,
    #[command(flatten)]
    params: ParamOverrides,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: checks::Suite,
}

/// Malformed input or flags.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// One or more invariant checks failed.
#[derive(Debug)]
struct ChecksFailed(usize);

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for ChecksFailed {}

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Invalid(_) | Error::Domain(_)) => 2,
        Some(Error::NonPhysical { .. } | Error::Degenerate(_)) => 3,
        Some(Error::Underdetermined { .. } | Error::FitFailed(_)) => 4,
        _ => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("HTA_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            input_error(format!(
                "HTA_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("cannot configure the thread pool")
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    if let Command::Check(args) = &cli.command {
        return cmd_check(args);
    }
    let data = match &cli.input {
        Some(path) => {
            if !path.is_file() {
                return Err(input_error(format!(
                    "input file {} not found",
                    path.display()
                )));
            }
            Dataset::from_path(path).map_err(|e| input_error(e.to_string()))?
        }
        None => Dataset::paper_default(),
    };
    fs::create_dir_all(&cli.out)
        .map_err(|e| input_error(format!("cannot create {}: {e}", cli.out.display())))?;
    let ctx = RunConfig {
        data,
        variant: cli.variant,
        out: cli.out.clone(),
        digits: cli.precision as usize,
    };
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(&ctx, args),
        Command::Fit(args) => cmd_fit(&ctx, args),
        Command::Grid(args) => cmd_grid(&ctx, args),
        Command::Scan(args) => cmd_scan(&ctx, args),
        Command::Check(_) => unreachable!(),
    }
}

struct RunConfig {
    data: Dataset,
    variant: Variant,
    out: PathBuf,
    digits: usize,
}

impl RunConfig {
    fn mesons(&self, only: Option<&str>) -> anyhow::Result<Vec<&MesonRecord>> {
        match only {
            Some(label) => Ok(vec![self
                .data
                .find(label)
                .map_err(|e| input_error(e.to_string()))?]),
            None => Ok(self.data.mesons.iter().collect()),
        }
    }

    fn csv(&self, header: &[&str]) -> Csv {
        Csv::new(header, self.digits)
    }

    fn announce(&self, path: &Path) {
        println!("wrote {}", path.display());
    }
}

/// Published parameters with any overrides applied.
fn params_for(
    record: &MesonRecord,
    variant: Variant,
    o: &ParamOverrides,
) -> anyhow::Result<CornellParams> {
    let base = record.paper_params.get(&variant).copied();
    let pick = |v: Option<f64>, f: fn(&CornellParams) -> f64, name: &str| {
        v.or(base.as_ref().map(f)).ok_or_else(|| {
            input_error(format!(
                "{} has no published {variant} value of {name}; pass --{name}",
                record.label
            ))
        })
    };
    let p = CornellParams {
        a: pick(o.a, |p| p.a, "a")?,
        b: pick(o.b, |p| p.b, "b")?,
        delta: pick(o.delta, |p| p.delta, "delta")?,
    };
    p.validate()?;
    Ok(p)
}

fn cmd_spectrum(ctx: &RunConfig, args: &SpectrumArgs) -> anyhow::Result<()> {
    let mut first_error: Option<Error> = None;
    for record in ctx.mesons(args.meson.as_deref())? {
        let params = params_for(record, ctx.variant, &args.params)?;
        let mut with = record.clone();
        with.paper_params.insert(ctx.variant, params);
        let table = meson_table(
            &with,
            ctx.variant,
            ParamSource::Paper,
            FitOptions::default(),
        )?;
        let sys = record.system_with(params)?;

        let mut csv = ctx.csv(&["label", "n", "l", "model_mass", "exp_mass", "branch"]);
        for row in &table.rows {
            let (mass, branch) = if args.zero_energy_stub {
                (Some(sys.constituent_mass()), "stub".to_string())
            } else {
                match &row.model_mass {
                    Ok(m) => (
                        Some(*m),
                        row.branch.map_or(String::new(), |b| b.symbol().to_string()),
                    ),
                    Err(e) => {
                        eprintln!("{} {}: {e}", record.label, row.label);
                        first_error.get_or_insert_with(|| e.clone());
                        (None, "none".to_string())
                    }
                }
            };
            csv.row(&[
                row.label.to_string(),
                row.state.n.to_string(),
                row.state.l.to_string(),
                csv.float(mass),
                csv.float(row.exp_mass),
                branch,
            ]);
        }
        ctx.announce(&csv.write(&ctx.out, &format!("{}_spectrum.csv", record.label))?);
        write_curves(
            ctx,
            &table,
            args.zero_energy_stub.then(|| sys.constituent_mass()),
        )?;
    }
    match first_error {
        Some(e) => Err(anyhow!(e).context("some levels could not be evaluated")),
        None => Ok(()),
    }
}

fn write_curves(ctx: &RunConfig, table: &MesonTable, stub: Option<f64>) -> anyhow::Result<()> {
    for (name, points, header) in [
        ("mass_vs_n", &table.mass_vs_n, ["l", "n", "mass"]),
        ("mass_vs_l", &table.mass_vs_l, ["n", "l", "mass"]),
    ] {
        let mut csv = ctx.csv(&header);
        for p in points {
            let (outer, inner) = if name == "mass_vs_n" {
                (p.l, p.n)
            } else {
                (p.n, p.l)
            };
            csv.row(&[
                outer.to_string(),
                inner.to_string(),
                csv.float(Some(stub.unwrap_or(p.mass))),
            ]);
        }
        ctx.announce(&csv.write(&ctx.out, &format!("{}_{name}.csv", table.meson))?);
    }
    Ok(())
}

fn cmd_fit(ctx: &RunConfig, args: &FitArgs) -> anyhow::Result<()> {
    let mut summary = ctx.csv(&["meson", "a", "b", "delta", "residual_rms", "converged"]);
    let mut failures = Vec::new();
    for record in ctx.mesons(args.meson.as_deref())? {
        let levels = if args.all_levels {
            record.all_experimental_levels()
        } else {
            record.experimental_levels(ctx.variant)
        };
        let mut seeds = Vec::new();
        if args.seed_from_paper {
            match record.paper_params.get(&ctx.variant) {
                Some(p) => seeds.extend(seeds_around(*p)),
                None => {
                    return Err(input_error(format!(
                        "{} has no published {} parameters",
                        record.label, ctx.variant
                    )))
                }
            }
        }
        seeds.extend(default_seeds());
        let start = record.system_with(seeds[0])?;
        match fit(&start, &levels, ctx.variant, &seeds, FitOptions::default()) {
            Ok(r) => {
                summary.row(&[
                    text(&record.label),
                    summary.float(Some(r.params.a)),
                    summary.float(Some(r.params.b)),
                    summary.float(Some(r.params.delta)),
                    summary.float(Some(r.residual_rms)),
                    r.converged.to_string(),
                ]);
                write_fit_levels(ctx, &record.label, &r)?;
            }
            Err(e) => {
                eprintln!("{}: {e}", record.label);
                failures.push(format!("{}: {e}", record.label));
            }
        }
    }
    ctx.announce(&summary.write(&ctx.out, "fitted_params.csv")?);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(anyhow!(Error::FitFailed(failures.join("; "))))
    }
}

fn write_fit_levels(ctx: &RunConfig, meson: &str, r: &FitResult) -> anyhow::Result<()> {
    let mut csv = ctx.csv(&[
        "label",
        "model_mass",
        "exp_mass",
        "error",
        "branch",
        "included",
    ]);
    for l in &r.per_level {
        csv.row(&[
            l.label.to_string(),
            csv.float(Some(l.model_mass)),
            csv.float(Some(l.exp_mass)),
            csv.float(Some(l.error)),
            l.branch.map_or("none".into(), |b| b.symbol().to_string()),
            l.included.to_string(),
        ]);
    }
    ctx.announce(&csv.write(&ctx.out, &format!("{meson}_fit_levels.csv"))?);
    Ok(())
}

fn cmd_grid(ctx: &RunConfig, args: &GridArgs) -> anyhow::Result<()> {
    if ctx.variant != Variant::Real7 {
        return Err(input_error(
            "wave functions are available for the real7 variant only",
        ));
    }
    let r_axis = Axis::new(args.r_min, args.r_max, args.r_count)?;
    let p_axis = Axis::new(args.p_min, args.p_max, args.p_count)?;
    if args.r_min <= 0.0 {
        return Err(input_error("--r-min must be positive"));
    }
    let record = ctx
        .data
        .find(&args.meson)
        .map_err(|e| input_error(e.to_string()))?;
    let sys = record.system_with(params_for(record, ctx.variant, &args.params)?)?;
    let n = args.label.polynomial_index();
    let mut w = WaveParams::for_level(&sys, args.label)?;
    if !args.unit_norm {
        w = w.with_norm(normalize_b(&w, n)?.norm)?;
    }
    let grid = density_grid(&w, n, r_axis, p_axis)?;
    let cells = grid.r_values.len() * grid.p_values.len();
    if grid.failures.len() == cells {
        return Err(grid.failures[0].error.clone().into());
    }
    for f in &grid.failures {
        eprintln!(
            "cell (r = {}, p_r = {}): {}",
            grid.r_values[f.r_index], grid.p_values[f.p_index], f.error
        );
    }
    let mut csv = ctx.csv(&["r", "p_r", "re", "im", "density"]);
    for (i, r) in grid.r_values.iter().enumerate() {
        for (j, p) in grid.p_values.iter().enumerate() {
            let z = grid.amplitudes[i][j];
            csv.row(&[
                csv.float(Some(*r)),
                csv.float(Some(*p)),
                csv.float(Some(z.re)),
                csv.float(Some(z.im)),
                csv.float(Some(grid.densities[i][j])),
            ]);
        }
    }
    ctx.announce(&csv.write(
        &ctx.out,
        &format!("{}_{}_grid.csv", record.label, args.label),
    )?);
    println!("B = {:e}", w.norm);
    Ok(())
}

fn cmd_scan(ctx: &RunConfig, args: &ScanArgs) -> anyhow::Result<()> {
    let record = ctx
        .data
        .find(&args.meson)
        .map_err(|e| input_error(e.to_string()))?;
    let sys = record.system_with(params_for(record, ctx.variant, &args.params)?)?;
    let points = branch_scan(
        &sys,
        args.label.state(),
        ctx.variant,
        args.param,
        (args.from, args.to),
        args.steps,
    )?;
    let mut csv = ctx.csv(&["value", "branch", "mass", "status"]);
    for p in &points {
        for (branch, mass) in [("+", &p.plus), ("-", &p.minus)] {
            let (m, status) = match mass {
                Ok(m) => (Some(*m), "ok".to_string()),
                Err(e) => (None, text(e.to_string())),
            };
            csv.row(&[
                csv.float(Some(p.value)),
                branch.into(),
                csv.float(m),
                status,
            ]);
        }
    }
    let param = match args.param {
        ScanParam::A => "a",
        ScanParam::B => "b",
        ScanParam::Delta => "delta",
    };
    ctx.announce(&csv.write(
        &ctx.out,
        &format!("{}_{}_scan_{param}.csv", record.label, args.label),
    )?);
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> anyhow::Result<()> {
    let results = checks::run(args.suite)?;
    let mut failed = 0;
    for c in &results {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "{tag} {}: {:.3e} (limit {:.0e})",
            c.name, c.measured, c.limit
        );
        failed += usize::from(!c.passed());
    }
    if failed > 0 {
        bail!(ChecksFailed(failed));
    }
    Ok(())
}
