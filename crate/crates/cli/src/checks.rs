//! Cross-validation suites run by `hta check`.

use std::f64::consts::PI;

use clap::ValueEnum;
use rayon::prelude::*;

use quarkonium::confinement::{moment_identity_check, Confinement1D};
use quarkonium::hta::{
    energy_complex, energy_p0_bracket, energy_real, energy_real_nu, CornellParams, MesonSystem,
    QuantumState, SpectroscopicLabel,
};
use quarkonium::nu::Branch;
use quarkonium::quad::{integrate_to_infinity, QuadOptions};
use quarkonium::wavefunction::{normalize_b, normalize_b_with, WaveParams};
use quarkonium::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Nu,
    Norm,
    Moment,
    All,
}

pub struct Check {
    pub name: String,
    pub measured: f64,
    pub limit: f64,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            limit,
        }
    }

    pub fn passed(&self) -> bool {
        self.measured <= self.limit
    }
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Nu | Suite::All) {
        out.extend(nu()?);
    }
    if matches!(suite, Suite::Norm | Suite::All) {
        out.extend(norm()?);
    }
    if matches!(suite, Suite::Moment | Suite::All) {
        out.extend(moment()?);
    }
    Ok(out)
}

/// Fixed parameter lattice so the suite is reproducible.
fn lattice() -> Vec<(MesonSystem, QuantumState)> {
    let mut cases = Vec::new();
    for a in [-2.0, 1.0] {
        for b in [0.3, 1.2] {
            for delta in [0.4, 1.2] {
                for m in [0.8, 2.0] {
                    let params = CornellParams { a, b, delta };
                    let sys = MesonSystem::new("lattice", 2.0 * m, 2.0 * m, params)
                        .expect("valid lattice point");
                    for n in 0..=3 {
                        for l in 0..=2 {
                            cases.push((sys.clone(), QuantumState::new(n, l).expect("in range")));
                        }
                    }
                }
            }
        }
    }
    cases
}

fn nu() -> Result<Vec<Check>> {
    let cases = lattice();
    let deviations: Vec<(u32, f64, f64)> = cases
        .par_iter()
        .map(|(sys, st)| {
            let closed = energy_real(sys, *st);
            let nu = match (&closed, energy_real_nu(sys, *st)) {
                (Ok(c), Ok(e)) => ((e - c) / c).abs(),
                _ => f64::INFINITY,
            };
            let p0 = match (
                energy_complex(sys, *st, 0.0, Branch::Plus),
                energy_p0_bracket(sys, *st),
            ) {
                (Ok(e), Ok(b)) => (e - b).norm() / b.abs(),
                _ => f64::INFINITY,
            };
            (st.n, nu, p0)
        })
        .collect();
    let mut out = Vec::new();
    for n in 0..=3 {
        let worst = deviations
            .iter()
            .filter(|d| d.0 == n)
            .map(|d| d.1)
            .fold(0.0, f64::max);
        out.push(Check::new(
            format!("nu root vs closed form, n = {n}"),
            worst,
            1e-9,
        ));
    }
    let worst = deviations.iter().map(|d| d.2).fold(0.0, f64::max);
    out.push(Check::new(
        "complex energy at p_r = 0 vs bracket",
        worst,
        1e-9,
    ));
    Ok(out)
}

fn norm() -> Result<Vec<Check>> {
    let sys = MesonSystem::new(
        "cc",
        1.23,
        1.23,
        CornellParams::new(-1.6808, 0.4069, 0.5074)?,
    )?;
    let mut out = Vec::new();
    for name in ["1S", "2S"] {
        let label: SpectroscopicLabel = name.parse()?;
        let n = label.polynomial_index();
        let w = WaveParams::for_level(&sys, label)?;
        let nb = normalize_b(&w, n)?;
        let wider = normalize_b_with(&w, n, 2.0 * nb.r_max, QuadOptions::with_rel(1e-9))?;
        out.push(Check::new(
            format!("cc {name} normalization truncation stability"),
            (wider.norm / nb.norm - 1.0).abs(),
            1e-4,
        ));
        let kernel = w.kernel(n)?;
        let parseval = integrate_to_infinity(
            |u: f64| u.powi(3) * kernel.eval(u).norm_sqr(),
            0.0,
            QuadOptions::with_rel(1e-10),
        )?
        .value
            * 8.0
            * PI
            / 3.0;
        out.push(Check::new(
            format!("cc {name} total probability (Parseval)"),
            (nb.norm * nb.norm * parseval - 1.0).abs(),
            1e-3,
        ));
    }
    let model = Confinement1D::new(0.615, 0.4069)?;
    let e0 = model.energy(0, 0.0)?;
    let c1 = model.normalize(e0)?;
    let total = c1 * c1 * model.norm_integral(e0, QuadOptions::with_rel(1e-7))?;
    out.push(Check::new(
        "1D ground state total probability",
        (total - 1.0).abs(),
        1e-3,
    ));
    Ok(out)
}

fn moment() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for x in [0.0, 1.0, 2.0] {
            out.push(Check::new(
                format!("Airy moment identity n = {n}, x = {x}"),
                moment_identity_check(x, n)?,
                1e-6,
            ));
        }
    }
    Ok(out)
}
