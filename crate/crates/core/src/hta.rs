//! Half-transform ansatz pipeline for the Cornell potential `V = a/r + b r`.
//!
//! After the substitution `x = 1/A` the reciprocal term is expanded to second
//! order about `x = delta`, which turns the radial equation into an NU problem
//! with `sigma = x^2`. Two formulations are provided:
//!
//! * [`Variant::Complex5`]: the original phase-space equation, whose energies
//!   are complex for nonzero radial momentum.
//! * [`Variant::Real7`]: the equation after extracting the `exp(-2 i p r)`
//!   phase, with real energies.
//!
//! Closed forms are arranged as `3b/delta + correction` with the correction
//! proportional to `(a - 3b/delta^2)^2`, so the degenerate potential
//! `a = 3b/delta^2` returns `3b/delta` exactly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nu::{eigencondition_residual, Branch, NuProblem};
use crate::roots::{brent, sign_changes};

pub const MAX_N: u32 = 10;
pub const MAX_L: u32 = 5;

/// Potential and expansion parameters in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornellParams {
    /// Coulomb-like coefficient.
    pub a: f64,
    /// Linear confinement strength.
    pub b: f64,
    /// Expansion point of the reciprocal series.
    pub delta: f64,
}

impl CornellParams {
    pub fn new(a: f64, b: f64, delta: f64) -> Result<Self> {
        let p = Self { a, b, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.delta.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite Cornell parameters {self:?}"
            )));
        }
        if self.delta == 0.0 {
            return Err(Error::Domain("delta must be nonzero".into()));
        }
        Ok(())
    }

    /// The `a` at which every level collapses to `3b/delta`.
    pub fn degenerate_a(&self) -> f64 {
        3.0 * self.b / (self.delta * self.delta)
    }
}

/// A quark-antiquark pair with its potential.
#[derive(Debug, Clone, PartialEq)]
pub struct MesonSystem {
    label: String,
    m_q: f64,
    m_qbar: f64,
    reduced_mass: f64,
    params: CornellParams,
}

impl MesonSystem {
    pub fn new(
        label: impl Into<String>,
        m_q: f64,
        m_qbar: f64,
        params: CornellParams,
    ) -> Result<Self> {
        if !(m_q > 0.0 && m_qbar > 0.0 && m_q.is_finite() && m_qbar.is_finite()) {
            return Err(Error::Invalid(format!(
                "quark masses must be positive, got {m_q} and {m_qbar}"
            )));
        }
        params.validate()?;
        Ok(Self {
            label: label.into(),
            m_q,
            m_qbar,
            reduced_mass: m_q * m_qbar / (m_q + m_qbar),
            params,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn m_q(&self) -> f64 {
        self.m_q
    }
    pub fn m_qbar(&self) -> f64 {
        self.m_qbar
    }
    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }
    pub fn params(&self) -> CornellParams {
        self.params
    }
    pub fn constituent_mass(&self) -> f64 {
        self.m_q + self.m_qbar
    }

    /// Same quarks, different potential.
    pub fn with_params(&self, params: CornellParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            ..self.clone()
        })
    }

    /// `M = m_q + m_qbar + E`.
    pub fn mass_from_energy(&self, energy: f64) -> f64 {
        self.constituent_mass() + energy
    }
}

/// Level index `n` of the closed forms and orbital number `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n > MAX_N || l > MAX_L {
            return Err(Error::Domain(format!(
                "state (n = {n}, l = {l}) outside n <= {MAX_N}, l <= {MAX_L}"
            )));
        }
        Ok(Self { n, l })
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn ll1(&self) -> f64 {
        let l = self.l as f64;
        l * (l + 1.0)
    }
}

const ORBITAL_LETTERS: [char; 6] = ['S', 'P', 'D', 'F', 'G', 'H'];

/// Spectroscopic label such as `2S` or `1P`.
///
/// `kX` maps to the closed-form level index `n = k`; the Rodrigues
/// polynomial of the same level has index `k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectroscopicLabel {
    pub radial: u32,
    pub l: u32,
}

impl SpectroscopicLabel {
    pub fn new(radial: u32, l: u32) -> Result<Self> {
        if radial == 0 {
            return Err(Error::Invalid("radial number starts at 1".into()));
        }
        QuantumState::new(radial, l)?;
        Ok(Self { radial, l })
    }

    pub fn state(&self) -> QuantumState {
        QuantumState {
            n: self.radial,
            l: self.l,
        }
    }

    pub fn polynomial_index(&self) -> usize {
        (self.radial - 1) as usize
    }
}

impl fmt::Display for SpectroscopicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.radial, ORBITAL_LETTERS[self.l as usize])
    }
}

impl FromStr for SpectroscopicLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot parse spectroscopic label {s:?}"));
        let letter = s.chars().last().ok_or_else(bad)?;
        let digits = &s[..s.len() - letter.len_utf8()];
        let radial: u32 = digits.parse().map_err(|_| bad())?;
        let l = ORBITAL_LETTERS
            .iter()
            .position(|&c| c == letter.to_ascii_uppercase())
            .ok_or_else(bad)? as u32;
        Self::new(radial, l)
    }
}

impl Serialize for SpectroscopicLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpectroscopicLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which eigenvalue formulation to use.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Complex energies from the untransformed phase-space equation.
    Complex5,
    /// Real energies after extracting the `exp(-2 i p r)` phase.
    #[default]
    Real7,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Complex5 => "complex5",
            Variant::Real7 => "real7",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex5" => Ok(Variant::Complex5),
            "real7" => Ok(Variant::Real7),
            _ => Err(Error::Invalid(format!(
                "unknown variant {s:?}, expected complex5 or real7"
            ))),
        }
    }
}

/// The constants alpha, beta, gamma of one formulation.
///
/// Alpha depends on the energy and is kept as the affine map
/// `E -> alpha_slope * E + alpha_offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HtaConstants {
    pub variant: Variant,
    pub alpha_slope: f64,
    pub alpha_offset: f64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub p_r: f64,
}

impl HtaConstants {
    pub fn alpha(&self, energy: Complex64) -> Complex64 {
        energy * self.alpha_slope + self.alpha_offset
    }

    /// The NU problem at a trial energy.
    pub fn problem(&self, energy: Complex64) -> Result<NuProblem> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let alpha = self.alpha(energy);
        match self.variant {
            Variant::Real7 => NuProblem::new(
                [zero, zero, one],
                [alpha, self.beta, self.gamma],
                [zero, Complex64::new(-4.0, 0.0)],
            ),
            Variant::Complex5 => NuProblem::new(
                [zero, zero, one],
                [-alpha, -self.beta, -self.gamma],
                [
                    Complex64::new(0.0, 4.0 * self.p_r),
                    Complex64::new(4.0, 0.0),
                ],
            ),
        }
    }
}

/// Coefficients `(c0, c1, c2)` with `1/x ~ c0 + c1 x + c2 x^2` near `delta`.
pub fn reciprocal_series(delta: f64) -> Result<(f64, f64, f64)> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "expansion point {delta} is not usable"
        )));
    }
    Ok((3.0 / delta, -3.0 / (delta * delta), 1.0 / delta.powi(3)))
}

/// Constants of the real formulation.
pub fn constants_real(sys: &MesonSystem, state: QuantumState) -> HtaConstants {
    let CornellParams { a, b, delta } = sys.params;
    let m = sys.reduced_mass;
    HtaConstants {
        variant: Variant::Real7,
        alpha_slope: 8.0 * m,
        alpha_offset: -24.0 * b * m / delta,
        beta: Complex64::new(8.0 * m * (3.0 * b / (delta * delta) - a), 0.0),
        gamma: Complex64::new(-4.0 * state.ll1() - 8.0 * b * m / delta.powi(3), 0.0),
        p_r: 0.0,
    }
}

/// Constants of the complex formulation at radial momentum `p_r`.
pub fn constants_complex(sys: &MesonSystem, state: QuantumState, p_r: f64) -> HtaConstants {
    let CornellParams { a, b, delta } = sys.params;
    let m = sys.reduced_mass;
    HtaConstants {
        variant: Variant::Complex5,
        alpha_slope: -8.0 * m,
        alpha_offset: 4.0 * p_r * p_r + 24.0 * b * m / delta,
        beta: Complex64::new(8.0 * m * (a - 3.0 * b / (delta * delta)), -8.0 * p_r),
        gamma: Complex64::new(4.0 * state.ll1() + 8.0 * b * m / delta.powi(3), 0.0),
        p_r,
    }
}

/// Real-formulation energy on the given branch of the square root.
pub fn energy_real_branch(sys: &MesonSystem, state: QuantumState, branch: Branch) -> Result<f64> {
    let CornellParams { b, delta, .. } = sys.params;
    let m = sys.reduced_mass;
    let k = constants_real(sys, state);
    let beta = k.beta.re;
    let gamma = k.gamma.re;
    let n = state.nf();
    let radicand = 25.0 + 8.0 * n - 4.0 * gamma;
    if radicand < 0.0 {
        return Err(Error::non_physical("25 + 8n - 4 gamma", radicand));
    }
    let den = -6.0 + (n - 3.0) * n + gamma;
    if den == 0.0 {
        return Err(Error::Degenerate(format!(
            "vanishing denominator for (n = {}, l = {})",
            state.n, state.l
        )));
    }
    let bracket = -(13.0 + 2.0 * n * (n + 1.0) - 2.0 * gamma)
        + branch.sign() * (1.0 - 2.0 * n).abs() * radicand.sqrt();
    let e = 3.0 * b / delta + beta * beta * bracket / (64.0 * m * den * den);
    finite(e, "real energy")
}

/// Real-formulation energy on the `+` branch, which carries the spectra.
pub fn energy_real(sys: &MesonSystem, state: QuantumState) -> Result<f64> {
    energy_real_branch(sys, state, Branch::Plus)
}

/// Complex-formulation energy at radial momentum `p_r`.
///
/// The square root of the fourth power is continued analytically as
/// `-c (1 + 2n) (4 i p + beta)^2 sqrt(9 + 4 gamma)`, which stays smooth in
/// `p_r` and reduces to the principal root at `p_r = 0`.
pub fn energy_complex(
    sys: &MesonSystem,
    state: QuantumState,
    p_r: f64,
    branch: Branch,
) -> Result<Complex64> {
    let CornellParams { b, delta, .. } = sys.params;
    let m = sys.reduced_mass;
    let k = constants_complex(sys, state, p_r);
    let i = Complex64::i();
    let (beta, g) = (k.beta, k.gamma.re);
    let n = state.nf();
    let nn = n * (n + 1.0);
    let c = -8.0 * m;
    let den = -2.0 + nn - g;
    if den == 0.0 {
        return Err(Error::Degenerate(format!(
            "vanishing denominator for (n = {}, l = {})",
            state.n, state.l
        )));
    }
    let shape = 5.0 + 2.0 * nn + 2.0 * g;
    let p2 = p_r * p_r;
    let body = 16.0 * p2 * (3.0 + 6.0 * g + 2.0 * (nn * (nn - 5.0) - 2.0 * nn * g + g * g))
        + 8.0 * i * p_r * beta * shape
        + beta * beta * shape;
    let shifted = 4.0 * i * p_r + beta;
    let root = -c * (1.0 + 2.0 * n) * shifted * shifted * Complex64::new(9.0 + 4.0 * g, 0.0).sqrt();
    let e = p2 / (2.0 * m)
        + 3.0 * b / delta
        + (body * c + root * branch.sign()) / (8.0 * c * c * den * den);
    if !(e.re.is_finite() && e.im.is_finite()) {
        return Err(Error::Numeric(format!("complex energy is not finite: {e}")));
    }
    Ok(e)
}

/// The `p_r = 0` energy written directly in the potential parameters,
///
/// `3b/delta + m (a delta^2 - 3b)^2 [(1+2n) sqrt(9+4g) - (5+2n(n+1)+2g)] / (delta^4 D^2)`
///
/// with `g = 4l(l+1) + 8bm/delta^3` and `D = n^2 + n - 2 - g`.
pub fn energy_p0_bracket(sys: &MesonSystem, state: QuantumState) -> Result<f64> {
    let CornellParams { a, b, delta } = sys.params;
    let m = sys.reduced_mass;
    let n = state.nf();
    let g = 4.0 * state.ll1() + 8.0 * b * m / delta.powi(3);
    let d = n * n + n - 2.0 - g;
    if d == 0.0 {
        return Err(Error::Degenerate("vanishing bracket denominator".into()));
    }
    if 9.0 + 4.0 * g < 0.0 {
        return Err(Error::non_physical("9 + 4 gamma", 9.0 + 4.0 * g));
    }
    let lead = a * delta * delta - 3.0 * b;
    let bracket = (1.0 + 2.0 * n) * (9.0 + 4.0 * g).sqrt() - (5.0 + 2.0 * n * (n + 1.0) + 2.0 * g);
    finite(
        3.0 * b / delta + m * lead * lead * bracket / (delta.powi(4) * d * d),
        "bracket energy",
    )
}

/// Real-formulation energy found by root-solving `lambda = lambda_n` in the
/// generic NU engine, scanning `E < 3b/delta` on a logarithmic grid.
///
/// Both branches are searched and the highest root is returned.
pub fn energy_real_nu(sys: &MesonSystem, state: QuantumState) -> Result<f64> {
    let consts = constants_real(sys, state);
    let top = -consts.alpha_offset / consts.alpha_slope;
    let grid: Vec<f64> = (0..=550)
        .map(|i| top - 10f64.powf(3.0 - i as f64 * 0.02))
        .collect();
    let n = state.n as i64;
    let mut best: Option<f64> = None;
    for branch in Branch::BOTH {
        let f = |e: f64| {
            eigencondition_residual(|x| consts.problem(x), Complex64::new(e, 0.0), n, branch)
                .map(|r| r.re)
                .unwrap_or(f64::NAN)
        };
        for (lo, hi) in sign_changes(f, &grid) {
            let xtol = 1e-15 * top.abs().max(lo.abs()).max(1.0);
            if let Ok(root) = brent(f, lo, hi, xtol) {
                best = Some(best.map_or(root, |b: f64| b.max(root)));
            }
        }
    }
    best.ok_or_else(|| {
        Error::Numeric(format!(
            "no NU eigenvalue below 3b/delta for (n = {}, l = {})",
            state.n, state.l
        ))
    })
}

/// A mass prediction with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassValue {
    pub mass: f64,
    pub energy: f64,
    pub branch: Branch,
}

/// `M = m_q + m_qbar + E` at `p_r = 0`.
///
/// Both square-root branches share one radicand, so realness cannot pick
/// between them; the `+` branch is used and `-` only if `+` fails.
pub fn mass_spectrum(
    sys: &MesonSystem,
    state: QuantumState,
    variant: Variant,
) -> Result<MassValue> {
    let value = |branch| {
        branch_energy(sys, state, variant, branch).map(|energy| MassValue {
            mass: sys.mass_from_energy(energy),
            energy,
            branch,
        })
    };
    value(Branch::Plus).or_else(|first| value(Branch::Minus).map_err(|_| first))
}

/// Energy at `p_r = 0` on one branch; the complex variant must come out real.
pub fn branch_energy(
    sys: &MesonSystem,
    state: QuantumState,
    variant: Variant,
    branch: Branch,
) -> Result<f64> {
    match variant {
        Variant::Real7 => energy_real_branch(sys, state, branch),
        Variant::Complex5 => {
            let e = energy_complex(sys, state, 0.0, branch)?;
            if e.im.abs() > 1e-12 * e.norm().max(1.0) {
                return Err(Error::non_physical("imaginary part of the energy", e.im));
            }
            Ok(e.re)
        }
    }
}

/// Potential parameter varied by [`parameter_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanParam {
    A,
    B,
    Delta,
}

impl FromStr for ScanParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ScanParam::A),
            "b" => Ok(ScanParam::B),
            "delta" => Ok(ScanParam::Delta),
            _ => Err(Error::Invalid(format!("unknown scan parameter {s:?}"))),
        }
    }
}

/// One grid point of a scan; failed evaluations are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub value: f64,
    pub mass: Result<f64>,
}

/// Evaluates the mass on `steps` equally spaced values of one parameter.
pub fn parameter_scan(
    sys: &MesonSystem,
    state: QuantumState,
    variant: Variant,
    param: ScanParam,
    range: (f64, f64),
    steps: usize,
) -> Result<Vec<ScanPoint>> {
    let points = scan_values(range, steps)?
        .into_par_iter()
        .map(|value| {
            let mut p = sys.params;
            match param {
                ScanParam::A => p.a = value,
                ScanParam::B => p.b = value,
                ScanParam::Delta => p.delta = value,
            }
            let mass = sys
                .with_params(p)
                .and_then(|s| mass_spectrum(&s, state, variant))
                .map(|v| v.mass);
            ScanPoint { value, mass }
        })
        .collect();
    Ok(points)
}

/// `steps` equally spaced values with exact end points.
fn scan_values(range: (f64, f64), steps: usize) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::Invalid(format!("empty scan interval [{lo}, {hi}]")));
    }
    if steps < 2 {
        return Err(Error::Invalid(format!(
            "a scan needs at least 2 steps, got {steps}"
        )));
    }
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

/// Masses on both branches at one scan value.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchScanPoint {
    pub value: f64,
    pub plus: Result<f64>,
    pub minus: Result<f64>,
}

/// Like [`parameter_scan`] but keeps both branches, which separate where
/// the spectrum has two candidate curves.
pub fn branch_scan(
    sys: &MesonSystem,
    state: QuantumState,
    variant: Variant,
    param: ScanParam,
    range: (f64, f64),
    steps: usize,
) -> Result<Vec<BranchScanPoint>> {
    Ok(scan_values(range, steps)?
        .into_par_iter()
        .map(|value| {
            let mut p = sys.params;
            match param {
                ScanParam::A => p.a = value,
                ScanParam::B => p.b = value,
                ScanParam::Delta => p.delta = value,
            }
            let at = |branch| {
                sys.with_params(p).and_then(|s| {
                    branch_energy(&s, state, variant, branch).map(|e| s.mass_from_energy(e))
                })
            };
            BranchScanPoint {
                value,
                plus: at(Branch::Plus),
                minus: at(Branch::Minus),
            }
        })
        .collect())
}

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Numeric(format!("{what} is not finite")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn charmonium() -> MesonSystem {
        MesonSystem::new(
            "cc",
            1.23,
            1.23,
            CornellParams::new(-1.6808, 0.4069, 0.5074).unwrap(),
        )
        .unwrap()
    }

    fn state(label: &str) -> QuantumState {
        label.parse::<SpectroscopicLabel>().unwrap().state()
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(reciprocal_series(1.0).unwrap(), (3.0, -3.0, 1.0));
        let d = 0.37;
        let (c0, c1, c2) = reciprocal_series(d).unwrap();
        assert!((c0 + c1 * d + c2 * d * d - 1.0 / d).abs() < 1e-14);
        assert!((c1 + 2.0 * c2 * d + 1.0 / (d * d)).abs() < 1e-12);
        assert!(reciprocal_series(0.0).is_err());
    }

    #[test]
    fn label_round_trip() {
        for s in ["1S", "2S", "1P", "2P", "3S", "4S", "1D"] {
            let l: SpectroscopicLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert_eq!(state("2P"), QuantumState { n: 2, l: 1 });
        assert!("0S".parse::<SpectroscopicLabel>().is_err());
        assert!("S".parse::<SpectroscopicLabel>().is_err());
        assert!("2X".parse::<SpectroscopicLabel>().is_err());
    }

    #[test]
    fn state_range() {
        assert!(QuantumState::new(10, 5).is_ok());
        assert!(QuantumState::new(11, 0).is_err());
        assert!(QuantumState::new(0, 6).is_err());
    }

    #[test]
    fn reduced_mass_is_derived() {
        let sys =
            MesonSystem::new("bc", 1.23, 4.19, CornellParams::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((sys.reduced_mass() - 1.23 * 4.19 / 5.42).abs() < 1e-12);
        assert!(MesonSystem::new("x", -1.0, 1.0, sys.params()).is_err());
    }

    #[test]
    fn beta_vanishes_at_degenerate_a() {
        let p = CornellParams::new(0.0, 0.4, 0.6).unwrap();
        let sys = charmonium()
            .with_params(CornellParams {
                a: p.degenerate_a(),
                ..p
            })
            .unwrap();
        let k = constants_real(&sys, state("1S"));
        assert_eq!(k.beta.re, 0.0);
        let flat = charmonium()
            .with_params(CornellParams::new(1.0, 0.0, 1.0).unwrap())
            .unwrap();
        assert_eq!(
            constants_real(&flat, QuantumState::new(0, 0).unwrap())
                .gamma
                .re,
            0.0
        );
    }

    #[test]
    fn charmonium_ground_state() {
        let m = mass_spectrum(&charmonium(), state("1S"), Variant::Real7).unwrap();
        assert!((m.mass - 3.097).abs() < 1e-3, "{}", m.mass);
        assert_eq!(m.branch, Branch::Plus);
    }

    #[test]
    fn complex_is_real_at_rest() {
        let sys = MesonSystem::new(
            "cc",
            1.23,
            1.23,
            CornellParams::new(-2.5423, 0.4278, 0.4286).unwrap(),
        )
        .unwrap();
        let e = energy_complex(&sys, state("1S"), 0.0, Branch::Plus).unwrap();
        assert!(e.im.abs() <= 1e-12 * e.norm());
        assert!((sys.mass_from_energy(e.re) - 3.097).abs() < 1e-3);
        let moving = energy_complex(&sys, state("1S"), 0.5, Branch::Plus).unwrap();
        assert!(moving.im.abs() > 1e-6);
    }

    #[test]
    fn bracket_matches_complex_closed_form() {
        let sys = charmonium();
        for s in ["1S", "2P", "1D"] {
            let e = energy_complex(&sys, state(s), 0.0, Branch::Plus)
                .unwrap()
                .re;
            let b = energy_p0_bracket(&sys, state(s)).unwrap();
            assert!((e - b).abs() < 1e-12 * b.abs());
        }
    }

    #[test]
    fn ground_state_matches_nu_root() {
        let sys = charmonium();
        for l in 0..3 {
            let st = QuantumState::new(0, l).unwrap();
            let closed = energy_real(&sys, st).unwrap();
            let nu = energy_real_nu(&sys, st).unwrap();
            assert!(
                (closed - nu).abs() < 1e-9 * closed.abs(),
                "{closed} vs {nu}"
            );
        }
    }

    #[test]
    fn scan_endpoints() {
        let pts = parameter_scan(
            &charmonium(),
            state("1S"),
            Variant::Real7,
            ScanParam::A,
            (-1.0, 1.0),
            2,
        )
        .unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].value, -1.0);
        assert_eq!(pts[1].value, 1.0);
        assert!(parameter_scan(
            &charmonium(),
            state("1S"),
            Variant::Real7,
            ScanParam::A,
            (1.0, 1.0),
            5
        )
        .is_err());
    }

    #[test]
    fn variant_parse() {
        assert_eq!("real7".parse::<Variant>().unwrap(), Variant::Real7);
        assert_eq!("complex5".parse::<Variant>().unwrap(), Variant::Complex5);
        assert!("x".parse::<Variant>().is_err());
    }
}
