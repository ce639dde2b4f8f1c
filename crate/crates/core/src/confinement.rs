//! One-dimensional linear confinement `H = p^2/2m + b r`.
//!
//! With the collective variable `A = p^2/2m + b r` the phase-space equation
//! becomes the Airy equation `omega Psi''(A) = (A - E) Psi` with
//! `omega = b^2 / 8m`. Decay at large `r` keeps only Ai, and `Psi(0) = 0`
//! quantizes the energy on the Airy zeros.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::special::{airy, airy_ai, airy_ai_zero, gamma};

/// Airy arguments beyond this are dropped from the normalization integral.
pub const TRUNCATION_ARGUMENT: f64 = 15.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confinement1D {
    m: f64,
    b: f64,
    omega: f64,
}

impl Confinement1D {
    pub fn new(m: f64, b: f64) -> Result<Self> {
        if !(m > 0.0 && b > 0.0 && m.is_finite() && b.is_finite()) {
            return Err(Error::Invalid(format!(
                "confinement needs m > 0 and b > 0, got m = {m}, b = {b}"
            )));
        }
        Ok(Self {
            m,
            b,
            omega: b * b / (8.0 * m),
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }

    fn kinetic(&self, p: f64) -> f64 {
        p * p / (2.0 * self.m)
    }

    /// `omega^(-1/3)`, the scale of the Airy argument.
    fn w(&self) -> f64 {
        self.omega.cbrt().recip()
    }

    /// `E_n = p^2/2m - z_{n+1} omega^(1/3)`.
    pub fn energy(&self, n: usize, p: f64) -> Result<f64> {
        Ok(self.kinetic(p) - airy_ai_zero(n + 1)? * self.omega.cbrt())
    }

    /// Airy argument `(p^2/2m + b r - E) omega^(-1/3)`.
    pub fn argument(&self, r: f64, p: f64, energy: f64) -> f64 {
        (self.kinetic(p) + self.b * r - energy) * self.w()
    }

    /// `Psi(r, p) = c1 Ai((p^2/2m + b r - E) omega^(-1/3))`.
    pub fn psi(&self, c1: f64, r: f64, p: f64, energy: f64) -> f64 {
        c1 * airy_ai(self.argument(r, p, energy))
    }

    /// `4 pi * int dp int r^2 |Psi|^2 dr` for unit `c1`.
    pub fn norm_integral(&self, e0: f64, opts: QuadOptions) -> Result<f64> {
        let w = self.w();
        let p_max = (2.0 * self.m * (TRUNCATION_ARGUMENT / w + e0)).sqrt();
        if !p_max.is_finite() || p_max <= 0.0 {
            return Err(Error::Domain(format!("no bound region for E0 = {e0}")));
        }
        let mut failure = None;
        let outer = integrate(
            |p: f64| {
                let r_max = (TRUNCATION_ARGUMENT / w + e0 - self.kinetic(p)) / self.b;
                if r_max <= 0.0 {
                    return 0.0;
                }
                match integrate(
                    |r: f64| {
                        let ai = airy_ai(self.argument(r, p, e0));
                        r * r * ai * ai
                    },
                    0.0,
                    r_max,
                    opts,
                ) {
                    Ok(v) => v.value,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            0.0,
            p_max,
            opts,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(8.0 * PI * outer?.value)
    }

    /// `c1 > 0` normalizing the ground state at energy `e0`.
    pub fn normalize(&self, e0: f64) -> Result<f64> {
        self.normalize_with(e0, QuadOptions::with_rel(1e-10))
    }

    pub fn normalize_with(&self, e0: f64, opts: QuadOptions) -> Result<f64> {
        let total = self.norm_integral(e0, opts)?;
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Numeric(format!("normalization integral is {total}")));
        }
        Ok(total.sqrt().recip())
    }

    /// `sqrt(6 b^3 w^3 Gamma(1/3)^2 / (5 * 3^(1/3)))` with `w = omega^(-1/3)`.
    ///
    /// Kept for comparison with the quadrature value, which is authoritative.
    pub fn normalization_sqrt_form(&self) -> f64 {
        let g = gamma(1.0 / 3.0).expect("Gamma(1/3) is finite");
        let bw = self.b * self.w();
        (6.0 * bw.powi(3) * g * g / (5.0 * 3f64.cbrt())).sqrt()
    }

    /// Time-dependent ground state
    /// `c1 (-1/2pi) (m/b^2)^(1/9) exp(-i p^2 t/(4 pi m) - i b r t/(2 pi) - i t^3 (m/b^2)^(1/3)/(24 pi^3))`.
    pub fn time_factor(&self, c1: f64, r: f64, p: f64, t: f64) -> Complex64 {
        let ratio = self.m / (self.b * self.b);
        let prefactor = -c1 / (2.0 * PI) * ratio.powf(1.0 / 9.0);
        let phase = -p * p * t / (4.0 * PI * self.m)
            - self.b * r * t / (2.0 * PI)
            - t.powi(3) * ratio.cbrt() / (24.0 * PI.powi(3));
        Complex64::from_polar(prefactor, phase)
    }
}

fn moment_upper(x: f64) -> f64 {
    (30.0 - x).max(10.0)
}

/// `int_0^inf t^n Ai(t + x)^2 dt`.
pub fn airy_moment(n: u32, x: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: 1e-16,
        rel_tol: 1e-12,
        max_intervals: 4000,
    };
    Ok(integrate(
        |t: f64| {
            let ai = airy_ai(t + x);
            t.powi(n as i32) * ai * ai
        },
        0.0,
        moment_upper(x),
        opts,
    )?
    .value)
}

/// Second `x`-derivative of [`airy_moment`], using
/// `(Ai^2)''(u) = 2 Ai'(u)^2 + 2 u Ai(u)^2`.
pub fn airy_moment_dxx(n: u32, x: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: 1e-16,
        rel_tol: 1e-12,
        max_intervals: 4000,
    };
    Ok(integrate(
        |t: f64| {
            let u = t + x;
            let a = airy(u);
            t.powi(n as i32) * 2.0 * (a.aip * a.aip + u * a.ai * a.ai)
        },
        0.0,
        moment_upper(x),
        opts,
    )?
    .value)
}

/// Relative residual of
/// `I_n(x) = n/(2n+1) [ (1/2) d^2/dx^2 - 2x ] I_{n-1}(x)`
/// with `I_n(x) = int_0^inf t^n Ai(t + x)^2 dt`.
pub fn moment_identity_check(x: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("the moment identity needs n >= 1".into()));
    }
    let lhs = airy_moment(n, x)?;
    let nf = n as f64;
    let rhs = nf / (2.0 * nf + 1.0)
        * (0.5 * airy_moment_dxx(n - 1, x)? - 2.0 * x * airy_moment(n - 1, x)?);
    Ok(((lhs - rhs) / lhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys() -> Confinement1D {
        Confinement1D::new(0.615, 0.4069).unwrap()
    }

    #[test]
    fn omega_definition() {
        let s = sys();
        assert_eq!(s.omega(), 0.4069 * 0.4069 / (8.0 * 0.615));
        assert!(Confinement1D::new(0.0, 1.0).is_err());
    }

    #[test]
    fn energies_ordered_and_shifted() {
        let s = sys();
        let e: Vec<f64> = (0..3).map(|n| s.energy(n, 0.0).unwrap()).collect();
        assert!(e[0] < e[1] && e[1] < e[2]);
        let expected = 2.338_107_410_459_767 * s.omega().cbrt();
        assert!((e[0] - expected).abs() < 1e-12);
        for n in 0..3 {
            let shift = s.energy(n, 0.7).unwrap() - s.energy(n, 0.0).unwrap();
            assert!((shift - 0.49 / (2.0 * 0.615)).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_and_tail() {
        let s = sys();
        let e = s.energy(0, 0.3).unwrap();
        assert!(s.psi(1.0, 0.0, 0.3, e).abs() < 1e-9);
        let far = (25.0 / s.w() + e) / s.b();
        assert!(s.psi(1.0, far, 0.3, e).abs() < 1e-10);
        let mid = s.psi(2.5, 1.3, 0.3, e);
        assert_eq!(mid, 2.5 * airy_ai(s.argument(1.3, 0.3, e)));
    }

    #[test]
    fn time_factor_modulus() {
        let s = sys();
        let z0 = s.time_factor(1.7, 1.0, 1.0, 0.0);
        assert_eq!(z0.im, 0.0);
        let m1 = s.time_factor(1.7, 0.4, 0.9, 1.3).norm();
        let m2 = s.time_factor(1.7, 0.4, 0.9, -7.1).norm();
        assert!((m1 - m2).abs() <= 4.0 * f64::EPSILON * m1);
    }

    #[test]
    fn moment_identity_first_order() {
        for x in [0.0, 1.0, 2.0] {
            assert!(moment_identity_check(x, 1).unwrap() < 1e-9);
        }
        assert!(moment_identity_check(0.0, 0).is_err());
    }
}
