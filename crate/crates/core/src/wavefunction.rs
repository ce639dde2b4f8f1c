//! Phase-space wave functions of the real formulation.
//!
//! In the half-transformed variable the NU solution is
//! `Omega(u) = phi(1/u) y_n(1/u) = exp(-s u) u^(kappa - 3) sum_j a_j u^(-j)`
//! with `s = sqrt(-alpha)` and `kappa = beta / (2 s)`. Inverting the
//! transform along the imaginary axis gives
//!
//! ```text
//! psi(r, p) = B sqrt(2/pi) exp(-4 i p r) int_r^inf Omega(u) exp(2 i p u) du
//!           = B sqrt(2/pi) exp(-4 i p r) sum_j a_j q^(j + 2 - kappa) Gamma(kappa - 2 - j, r q)
//! ```
//!
//! with `q = s - 2 i p`. The quadrature form is [`psi_n_numeric`], the
//! incomplete-gamma form is [`psi_n`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hta::{constants_real, energy_real, MesonSystem, SpectroscopicLabel};
use crate::nu::{Branch, NuProblem, Polynomial};
use crate::quad::{integrate, integrate_to_infinity, QuadOptions};
use crate::special::upper_incomplete_gamma;

/// Highest polynomial index accepted by the quadrature path.
pub const MAX_NUMERIC_N: usize = 6;

/// Constants of one level and the normalization `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub norm: f64,
}

/// `exp(-s u) u^(kappa - 3) y(1/u)` for one polynomial index.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub s: f64,
    pub kappa: f64,
    pub poly: Polynomial,
}

impl Kernel {
    pub fn eval(&self, u: f64) -> Complex64 {
        let x = Complex64::new(u.recip(), 0.0);
        self.poly.eval(x) * ((self.kappa - 3.0) * u.ln() - self.s * u).exp()
    }
}

impl WaveParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, norm: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::Invalid("non-finite wave-function constants".into()));
        }
        if alpha >= 0.0 {
            return Err(Error::non_physical(
                "alpha (bound states need alpha < 0)",
                alpha,
            ));
        }
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Invalid(format!(
                "normalization {norm} must be positive"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            norm,
        })
    }

    /// Constants of the labelled level at its real-formulation energy.
    pub fn for_level(sys: &MesonSystem, label: SpectroscopicLabel) -> Result<Self> {
        let state = label.state();
        Self::at_energy(sys, label, energy_real(sys, state)?)
    }

    /// Constants of the level's `(l)` channel at an explicit energy.
    pub fn at_energy(sys: &MesonSystem, label: SpectroscopicLabel, energy: f64) -> Result<Self> {
        let k = constants_real(sys, label.state());
        Self::new(
            k.alpha(Complex64::new(energy, 0.0)).re,
            k.beta.re,
            k.gamma.re,
            1.0,
        )
    }

    pub fn with_norm(self, norm: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.gamma, norm)
    }

    pub fn s(&self) -> f64 {
        (-self.alpha).sqrt()
    }

    pub fn kappa(&self) -> f64 {
        self.beta / (2.0 * self.s())
    }

    /// The NU problem in `x = 1/A` for these constants.
    pub fn problem(&self) -> Result<NuProblem> {
        let c = |v: f64| Complex64::new(v, 0.0);
        NuProblem::new(
            [c(0.0), c(0.0), c(1.0)],
            [c(self.alpha), c(self.beta), c(self.gamma)],
            [c(0.0), c(-4.0)],
        )
    }

    /// Half-transformed kernel for polynomial index `n` (unit `B`).
    pub fn kernel(&self, n: usize) -> Result<Kernel> {
        let problem = self.problem()?;
        let sol = problem.solve(Branch::Plus)?;
        let poly = problem.rodrigues_y(&sol.rho()?, n)?;
        Ok(Kernel {
            s: self.s(),
            kappa: self.kappa(),
            poly,
        })
    }

    fn check_order(&self, n: usize) -> Result<()> {
        let kappa = self.kappa();
        if kappa.fract() == 0.0 && kappa >= 0.0 && kappa <= (n + 2) as f64 {
            return Err(Error::Degenerate(format!(
                "beta / (2 sqrt(-alpha)) = {kappa} hits a gamma pole for n = {n}"
            )));
        }
        if kappa <= 0.5 {
            return Err(Error::non_physical(
                "beta / (2 sqrt(-alpha)) (needs > 1/2 for a normalizable state)",
                kappa,
            ));
        }
        Ok(())
    }
}

fn prefactor(params: &WaveParams, r: f64, p: f64) -> Complex64 {
    Complex64::from_polar(params.norm * (2.0 / PI).sqrt(), -4.0 * p * r)
}

/// Closed form for polynomial index `n` as a sum of incomplete gammas.
pub fn psi_n(params: &WaveParams, n: usize, r: f64, p: f64) -> Result<Complex64> {
    if !(r > 0.0 && r.is_finite() && p.is_finite()) {
        return Err(Error::Domain(format!(
            "need r > 0 and finite p, got ({r}, {p})"
        )));
    }
    params.check_order(n)?;
    let kernel = params.kernel(n)?;
    let q = Complex64::new(kernel.s, -2.0 * p);
    let lnq = q.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, &a) in kernel.poly.coeffs.iter().enumerate() {
        let order = kernel.kappa - 2.0 - j as f64;
        let g = upper_incomplete_gamma(Complex64::new(order, 0.0), q * r)?;
        sum += a * (lnq * -order).exp() * g;
    }
    Ok(prefactor(params, r, p) * sum)
}

/// Ground state, `n = 0`.
pub fn psi0(params: &WaveParams, r: f64, p: f64) -> Result<Complex64> {
    psi_n(params, 0, r, p)
}

/// First excitation, `n = 1`.
pub fn psi1(params: &WaveParams, r: f64, p: f64) -> Result<Complex64> {
    psi_n(params, 1, r, p)
}

/// The same wave function by direct quadrature of the inverse transform.
pub fn psi_n_numeric(params: &WaveParams, n: usize, r: f64, p: f64) -> Result<Complex64> {
    if n > MAX_NUMERIC_N {
        return Err(Error::Unsupported(format!(
            "numeric transform supports n <= {MAX_NUMERIC_N}, got {n}"
        )));
    }
    if !(r > 0.0 && r.is_finite() && p.is_finite()) {
        return Err(Error::Domain(format!(
            "need r > 0 and finite p, got ({r}, {p})"
        )));
    }
    params.check_order(n)?;
    let kernel = params.kernel(n)?;
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-11,
        max_intervals: 4000,
    };
    let integral = integrate_to_infinity(
        |u: f64| kernel.eval(u) * Complex64::from_polar(1.0, 2.0 * p * u),
        r,
        opts,
    )?;
    Ok(prefactor(params, r, p) * integral.value)
}

/// `Omega = psi exp(2 i p r)`, the function left after removing the ansatz phase.
pub fn omega(params: &WaveParams, n: usize, r: f64, p: f64) -> Result<Complex64> {
    Ok(psi_n(params, n, r, p)? * Complex64::from_polar(1.0, 2.0 * p * r))
}

/// Outcome of [`normalize_b`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    /// The constant `B`.
    pub norm: f64,
    /// `4 pi int int |psi|^2 r^2 dr dp` at unit `B`.
    pub unit_total: f64,
    /// Radial truncation used.
    pub r_max: f64,
}

/// `int |psi(r, p)|^2 dp` at fixed `r`, through `p = (s/2) tan(theta)`.
pub fn momentum_marginal(params: &WaveParams, n: usize, r: f64, opts: QuadOptions) -> Result<f64> {
    let half_s = 0.5 * params.s();
    let mut failure = None;
    let v = integrate(
        |theta: f64| {
            let c = theta.cos();
            if c <= 0.0 {
                return 0.0;
            }
            let p = half_s * theta.tan();
            match psi_n(params, n, r, p) {
                Ok(z) => z.norm_sqr() * half_s / (c * c),
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        opts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(v?.value)
}

/// `4 pi int_0^r_max r^2 int |psi|^2 dp dr`.
pub fn total_probability(
    params: &WaveParams,
    n: usize,
    r_max: f64,
    opts: QuadOptions,
) -> Result<f64> {
    let mut failure = None;
    let v = integrate(
        |r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            match momentum_marginal(params, n, r, opts) {
                Ok(m) => r * r * m,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        r_max,
        opts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(4.0 * PI * v?.value)
}

/// Smallest radius beyond the peak where `r^2 int |psi|^2 dp` drops below
/// `1e-12` of its peak.
pub fn truncation_radius(params: &WaveParams, n: usize) -> Result<f64> {
    let opts = QuadOptions::with_rel(1e-6);
    let step = 0.25 / params.s();
    let mut peak = 0.0f64;
    let mut r = step;
    for _ in 0..10_000 {
        let v = r * r * momentum_marginal(params, n, r, opts)?;
        peak = peak.max(v);
        if peak > 0.0 && v < 1e-12 * peak {
            return Ok(r);
        }
        r += step;
    }
    Err(Error::Numeric(format!(
        "radial tail still above 1e-12 of the peak at r = {r}"
    )))
}

/// The `B` with `4 pi int int |psi|^2 r^2 dr dp = 1`.
pub fn normalize_b(params: &WaveParams, n: usize) -> Result<Normalization> {
    let r_max = truncation_radius(params, n)?;
    normalize_b_with(params, n, r_max, QuadOptions::with_rel(1e-9))
}

pub fn normalize_b_with(
    params: &WaveParams,
    n: usize,
    r_max: f64,
    opts: QuadOptions,
) -> Result<Normalization> {
    let unit = params.with_norm(1.0)?;
    let unit_total = total_probability(&unit, n, r_max, opts)?;
    if !(unit_total > 0.0 && unit_total.is_finite()) {
        return Err(Error::Numeric(format!(
            "normalization integral is {unit_total}"
        )));
    }
    Ok(Normalization {
        norm: unit_total.sqrt().recip(),
        unit_total,
        r_max,
    })
}

/// Equally spaced sample points; one point means `lo` alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Invalid("an axis needs at least one point".into()));
        }
        if !(lo.is_finite() && hi.is_finite()) || (count > 1 && hi <= lo) {
            return Err(Error::Invalid(format!(
                "bad axis [{lo}, {hi}] with {count} points"
            )));
        }
        Ok(Self { lo, hi, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64
                }
            })
            .collect()
    }
}

/// A cell whose evaluation failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellError {
    pub r_index: usize,
    pub p_index: usize,
    pub error: Error,
}

/// Amplitudes and densities on an `(r, p)` grid, indexed `[r][p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    pub r_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub amplitudes: Vec<Vec<Complex64>>,
    pub densities: Vec<Vec<f64>>,
    /// Failed cells hold NaN amplitudes.
    pub failures: Vec<CellError>,
}

impl PhaseSpaceGrid {
    /// Radius of maximum density in column `p_index`.
    pub fn argmax_r(&self, p_index: usize) -> Option<f64> {
        self.densities
            .iter()
            .enumerate()
            .filter(|(_, row)| row[p_index].is_finite())
            .max_by(|a, b| a.1[p_index].total_cmp(&b.1[p_index]))
            .map(|(i, _)| self.r_values[i])
    }
}

/// Evaluates `psi_n` on every grid cell in parallel.
pub fn density_grid(
    params: &WaveParams,
    n: usize,
    r_axis: Axis,
    p_axis: Axis,
) -> Result<PhaseSpaceGrid> {
    let r_values = r_axis.values();
    let p_values = p_axis.values();
    if r_values.iter().any(|&r| r <= 0.0) {
        return Err(Error::Invalid("radial axis must be positive".into()));
    }
    let cells: Vec<Result<Complex64>> = (0..r_values.len() * p_values.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / p_values.len(), idx % p_values.len());
            psi_n(params, n, r_values[i], p_values[j])
        })
        .collect();
    let mut amplitudes = vec![Vec::with_capacity(p_values.len()); r_values.len()];
    let mut densities = vec![Vec::with_capacity(p_values.len()); r_values.len()];
    let mut failures = Vec::new();
    for (idx, cell) in cells.into_iter().enumerate() {
        let (i, j) = (idx / p_values.len(), idx % p_values.len());
        let z = match cell {
            Ok(z) => z,
            Err(error) => {
                failures.push(CellError {
                    r_index: i,
                    p_index: j,
                    error,
                });
                Complex64::new(f64::NAN, f64::NAN)
            }
        };
        amplitudes[i].push(z);
        densities[i].push(z.norm_sqr());
    }
    Ok(PhaseSpaceGrid {
        r_values,
        p_values,
        amplitudes,
        densities,
        failures,
    })
}
