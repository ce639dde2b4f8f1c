//! Adaptive Gauss-Kronrod (7/15) quadrature for real and complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: real or complex.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and limits for an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-11,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn with_rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

/// Result of an adaptive integration with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn gk15<T: Scalar, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Panel<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = (kronrod - gauss).magnitude() * half.abs();
    Panel { a, b, value, error }
}

/// Integrates `f` over `[a, b]` with globally adaptive bisection.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Integral<T>>
where
    T: Scalar,
    F: FnMut(f64) -> T,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: 0.0,
            intervals: 0,
        });
    }
    let first = gk15(&mut f, a, b);
    let mut total = first.value;
    let mut err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(ByError(first));
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps.is_multiple_of(64) {
            // Refresh the running sums to stop drift.
            total = heap.iter().fold(T::zero(), |acc, p| acc + p.0.value);
            err = heap.iter().map(|p| p.0.error).sum();
        }
        if !(total.magnitude().is_finite() && err.is_finite()) {
            return Err(Error::Numeric(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.magnitude());
        if err <= target {
            let exact_total = heap.iter().fold(T::zero(), |acc, p| acc + p.0.value);
            let exact_err: f64 = heap.iter().map(|p| p.0.error).sum();
            if exact_err <= opts.abs_tol.max(opts.rel_tol * exact_total.magnitude()) {
                return Ok(finish(heap.into_iter().map(|p| p.0).collect()));
            }
            total = exact_total;
            err = exact_err;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Numeric(format!(
                "quadrature on [{a}, {b}] did not converge: error estimate {err:e} \
                 above target {target:e} after {} panels",
                heap.len()
            )));
        }
        let p = heap.pop().expect("heap is never empty").0;
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            return Err(Error::Numeric(format!(
                "quadrature panel collapsed near {mid} with error {:e}",
                p.error
            )));
        }
        let left = gk15(&mut f, p.a, mid);
        let right = gk15(&mut f, mid, p.b);
        total = total - p.value + left.value + right.value;
        err += left.error + right.error - p.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
    }
}

struct ByError<T>(Panel<T>);

impl<T> PartialEq for ByError<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl<T> Eq for ByError<T> {}
impl<T> PartialOrd for ByError<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for ByError<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

fn finish<T: Scalar>(mut panels: Vec<Panel<T>>) -> Integral<T> {
    // Sum left to right so the result does not depend on refinement order.
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Integral {
        value: panels.iter().fold(T::zero(), |acc, p| acc + p.value),
        error: panels.iter().map(|p| p.error).sum(),
        intervals: panels.len(),
    }
}

/// Integrates over `[a, inf)` through the map `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<T, F>(mut f: F, a: f64, opts: QuadOptions) -> Result<Integral<T>>
where
    T: Scalar,
    F: FnMut(f64) -> T,
{
    integrate(
        |t: f64| {
            if t >= 1.0 {
                return T::zero();
            }
            let u = 1.0 - t;
            let x = a + t / u;
            f(x) * (1.0 / (u * u))
        },
        0.0,
        1.0,
        opts,
    )
}
