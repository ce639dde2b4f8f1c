//! Least-squares fits of `(a, b, delta)` to experimental level masses and
//! regeneration of the spectrum tables.

use rayon::prelude::*;

use crate::dataset::MesonRecord;
use crate::error::{Error, Result};
use crate::hta::{
    mass_spectrum, CornellParams, MesonSystem, QuantumState, SpectroscopicLabel, Variant,
};
use crate::nu::Branch;
use crate::optim::{nelder_mead, SimplexOptions};

/// Error charged to a level whose mass cannot be evaluated, in GeV.
pub const PENALTY: f64 = 10.0;
/// Free parameters of the model.
pub const PARAMETERS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentalLevel {
    pub label: SpectroscopicLabel,
    pub mass: f64,
    pub include_in_fit: bool,
}

impl ExperimentalLevel {
    pub fn state(&self) -> QuantumState {
        self.label.state()
    }
}

/// Model against experiment for one level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelFit {
    pub label: SpectroscopicLabel,
    /// NaN when the model could not be evaluated.
    pub model_mass: f64,
    pub exp_mass: f64,
    /// `model - exp`, or [`PENALTY`] when the model failed.
    pub error: f64,
    pub branch: Option<Branch>,
    pub included: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: CornellParams,
    pub residual_rms: f64,
    pub per_level: Vec<LevelFit>,
    pub converged: bool,
    /// Index of the seed that produced the result.
    pub seed_index: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub simplex: SimplexOptions,
    /// Converged requires a final simplex diameter below this.
    pub diameter_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            simplex: SimplexOptions {
                xtol: 1e-10,
                ftol: 1e-16,
                max_evals: 20_000,
                initial_step: 0.05,
            },
            diameter_tol: 1e-8,
        }
    }
}

/// Per-level comparison for a system.
pub fn compare_levels(
    sys: &MesonSystem,
    levels: &[ExperimentalLevel],
    variant: Variant,
) -> Vec<LevelFit> {
    levels
        .iter()
        .map(|lvl| match mass_spectrum(sys, lvl.state(), variant) {
            Ok(v) => LevelFit {
                label: lvl.label,
                model_mass: v.mass,
                exp_mass: lvl.mass,
                error: v.mass - lvl.mass,
                branch: Some(v.branch),
                included: lvl.include_in_fit,
            },
            Err(_) => LevelFit {
                label: lvl.label,
                model_mass: f64::NAN,
                exp_mass: lvl.mass,
                error: PENALTY,
                branch: None,
                included: lvl.include_in_fit,
            },
        })
        .collect()
}

/// RMS of the errors of the included levels.
pub fn rms_of(per_level: &[LevelFit]) -> f64 {
    let errs: Vec<f64> = per_level
        .iter()
        .filter(|l| l.included)
        .map(|l| l.error)
        .collect();
    (errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64).sqrt()
}

fn usable(levels: &[ExperimentalLevel]) -> Result<usize> {
    let n = levels.iter().filter(|l| l.include_in_fit).count();
    if n < PARAMETERS {
        return Err(Error::Underdetermined {
            usable: n,
            needed: PARAMETERS,
        });
    }
    Ok(n)
}

/// Unweighted RMS of `mass_spectrum - experiment` over the included levels.
pub fn residual(sys: &MesonSystem, levels: &[ExperimentalLevel], variant: Variant) -> Result<f64> {
    usable(levels)?;
    Ok(rms_of(&compare_levels(sys, levels, variant)))
}

fn objective(sys: &MesonSystem, levels: &[ExperimentalLevel], variant: Variant, x: &[f64]) -> f64 {
    let (a, b, delta) = (x[0], x[1], x[2]);
    if !(b > 0.0 && delta > 0.0) {
        return 1e3 + b.min(0.0).abs() + delta.min(0.0).abs();
    }
    match sys.with_params(CornellParams { a, b, delta }) {
        Ok(s) => rms_of(&compare_levels(&s, levels, variant)),
        Err(_) => 1e3,
    }
}

/// Residuals closer than this count as a tie.
const TIE: f64 = 1e-12;

/// Derivative-free fit from every seed; the best result wins, ties going
/// to the lower seed index.
pub fn fit(
    sys_initial: &MesonSystem,
    levels: &[ExperimentalLevel],
    variant: Variant,
    seeds: &[CornellParams],
    opts: FitOptions,
) -> Result<FitResult> {
    usable(levels)?;
    if seeds.is_empty() {
        return Err(Error::Invalid("at least one seed is required".into()));
    }
    if let Some(bad) = seeds.iter().find(|s| !(s.delta > 0.0 && s.b > 0.0)) {
        return Err(Error::Invalid(format!(
            "seed {bad:?} violates b > 0, delta > 0"
        )));
    }
    let runs: Vec<(usize, crate::optim::Minimum)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let m = nelder_mead(
                |x| objective(sys_initial, levels, variant, x),
                &[s.a, s.b, s.delta],
                opts.simplex,
            );
            (i, m)
        })
        .collect();
    let mut failures = Vec::new();
    let mut best: Option<FitResult> = None;
    for (i, m) in runs {
        let params = CornellParams {
            a: m.x[0],
            b: m.x[1],
            delta: m.x[2],
        };
        let Ok(sys) = sys_initial.with_params(params) else {
            failures.push(format!("seed {i}: invalid end point {params:?}"));
            continue;
        };
        let per_level = compare_levels(&sys, levels, variant);
        if per_level.iter().any(|l| l.included && l.branch.is_none())
            || !(params.b > 0.0 && params.delta > 0.0)
        {
            failures.push(format!("seed {i}: non-physical end point {params:?}"));
            continue;
        }
        let result = FitResult {
            params,
            residual_rms: rms_of(&per_level),
            per_level,
            converged: m.diameter < opts.diameter_tol,
            seed_index: i,
            evaluations: m.evals,
        };
        if best
            .as_ref()
            .is_none_or(|b| result.residual_rms < b.residual_rms - TIE)
        {
            best = Some(result);
        }
    }
    best.ok_or_else(|| Error::FitFailed(failures.join("; ")))
}

/// Seeds around a starting point: the point, +/-10 % in every coordinate,
/// and the mirror image in `a` about the degenerate value `3b/delta^2`,
/// which gives identical spectra.
pub fn seeds_around(p: CornellParams) -> Vec<CornellParams> {
    let mut seeds = vec![p];
    for f in [1.1, 0.9] {
        seeds.push(CornellParams {
            a: p.a * f,
            b: p.b * f,
            delta: p.delta * f,
        });
    }
    seeds.push(CornellParams {
        a: 2.0 * p.degenerate_a() - p.a,
        ..p
    });
    seeds
}

/// Generic seeds covering both signs of `a`.
pub fn default_seeds() -> Vec<CornellParams> {
    let mut seeds = Vec::new();
    for &a in &[-2.0, -0.5, 0.5, 2.0, 50.0, 100.0] {
        for &(b, delta) in &[(0.5, 0.5), (1.0, 1.0), (0.5, 0.2)] {
            seeds.push(CornellParams { a, b, delta });
        }
    }
    seeds
}

/// Source of parameters for [`regenerate_tables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamSource {
    Paper,
    Fit,
}

/// One row of a regenerated spectrum table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: SpectroscopicLabel,
    pub state: QuantumState,
    pub model_mass: Result<f64>,
    pub branch: Option<Branch>,
    pub exp_mass: Option<f64>,
    pub paper_mass: Option<f64>,
    pub refs: Vec<Option<f64>>,
}

/// A point of the mass-versus-quantum-number curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub n: u32,
    pub l: u32,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MesonTable {
    pub meson: String,
    pub params: CornellParams,
    pub fit: Option<FitResult>,
    pub reference_columns: Vec<String>,
    pub rows: Vec<TableRow>,
    /// Mass against `n` at fixed `l`.
    pub mass_vs_n: Vec<CurvePoint>,
    /// Mass against `l` at fixed `n`.
    pub mass_vs_l: Vec<CurvePoint>,
}

fn curve(
    sys: &MesonSystem,
    variant: Variant,
    pairs: impl Iterator<Item = (u32, u32)>,
) -> Vec<CurvePoint> {
    pairs
        .filter_map(|(n, l)| {
            let st = QuantumState::new(n, l).ok()?;
            mass_spectrum(sys, st, variant)
                .ok()
                .map(|v| CurvePoint { n, l, mass: v.mass })
        })
        .collect()
}

/// Model spectrum next to experiment and other models for one meson.
pub fn meson_table(
    record: &MesonRecord,
    variant: Variant,
    source: ParamSource,
    opts: FitOptions,
) -> Result<MesonTable> {
    let (params, fit_result) = match source {
        ParamSource::Paper => (record.system(variant)?.params(), None),
        ParamSource::Fit => {
            let levels = record.experimental_levels(variant);
            let mut seeds = Vec::new();
            if let Some(p) = record.paper_params.get(&variant) {
                seeds.extend(seeds_around(*p));
            }
            seeds.extend(default_seeds());
            let start = record.system_with(seeds[0])?;
            let f = fit(&start, &levels, variant, &seeds, opts)?;
            (f.params, Some(f))
        }
    };
    let sys = record.system_with(params)?;
    let rows = record
        .levels
        .iter()
        .map(|lvl| {
            let state = lvl.label.state();
            let m = mass_spectrum(&sys, state, variant);
            TableRow {
                label: lvl.label,
                state,
                branch: m.as_ref().ok().map(|v| v.branch),
                model_mass: m.map(|v| v.mass),
                exp_mass: lvl.exp,
                paper_mass: lvl.paper.get(&variant).copied(),
                refs: lvl.refs.clone(),
            }
        })
        .collect();
    Ok(MesonTable {
        meson: record.label.clone(),
        params,
        fit: fit_result,
        reference_columns: record.reference_columns.clone(),
        rows,
        mass_vs_n: curve(
            &sys,
            variant,
            (0..3).flat_map(|l| (1..=5).map(move |n| (n, l))),
        ),
        mass_vs_l: curve(
            &sys,
            variant,
            (1..=3).flat_map(|n| (0..=3).map(move |l| (n, l))),
        ),
    })
}

/// Tables for every meson in the list.
pub fn regenerate_tables(
    records: &[MesonRecord],
    variant: Variant,
    source: ParamSource,
    opts: FitOptions,
) -> Result<Vec<MesonTable>> {
    records
        .iter()
        .map(|r| meson_table(r, variant, source, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(label: &str, mass: f64) -> ExperimentalLevel {
        ExperimentalLevel {
            label: label.parse().unwrap(),
            mass,
            include_in_fit: true,
        }
    }

    fn cc() -> MesonSystem {
        MesonSystem::new(
            "cc",
            1.23,
            1.23,
            CornellParams::new(-1.6808, 0.4069, 0.5074).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn too_few_levels() {
        let levels = [level("1S", 3.097), level("2S", 3.686)];
        assert_eq!(
            residual(&cc(), &levels, Variant::Real7),
            Err(Error::Underdetermined {
                usable: 2,
                needed: 3
            })
        );
        assert!(residual(&cc(), &[], Variant::Real7).is_err());
    }

    #[test]
    fn synthetic_round_trip_residual() {
        let levels: Vec<_> = ["1S", "2S", "1P", "2P", "3S", "4S", "1D"]
            .iter()
            .map(|s| {
                let m = mass_spectrum(
                    &cc(),
                    s.parse::<SpectroscopicLabel>().unwrap().state(),
                    Variant::Real7,
                )
                .unwrap();
                level(s, m.mass)
            })
            .collect();
        assert!(residual(&cc(), &levels, Variant::Real7).unwrap() < 1e-12);
    }

    #[test]
    fn order_invariance() {
        let mut levels = vec![
            level("1S", 3.1),
            level("2S", 3.7),
            level("1P", 3.5),
            level("1D", 3.8),
        ];
        let r1 = residual(&cc(), &levels, Variant::Real7).unwrap();
        levels.reverse();
        let r2 = residual(&cc(), &levels, Variant::Real7).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn penalty_for_failed_levels() {
        let sys = cc()
            .with_params(CornellParams::new(-1.0, -5.0, 0.5).unwrap())
            .unwrap();
        let levels = [level("1S", 3.1), level("2S", 3.7), level("1P", 3.5)];
        let r = residual(&sys, &levels, Variant::Real7).unwrap();
        assert!(r.is_finite());
    }

    #[test]
    fn seed_validation() {
        let levels = [level("1S", 3.1), level("2S", 3.7), level("1P", 3.5)];
        assert!(fit(&cc(), &levels, Variant::Real7, &[], FitOptions::default()).is_err());
        let bad = CornellParams {
            a: 1.0,
            b: 1.0,
            delta: -1.0,
        };
        assert!(fit(
            &cc(),
            &levels,
            Variant::Real7,
            &[bad],
            FitOptions::default()
        )
        .is_err());
    }
}
