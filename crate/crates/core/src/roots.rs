//! Scalar root finding: Brent's method and sign-change bracketing.

use crate::error::{Error, Result};

/// Finds a root of `f` in `[a, b]` where `f(a)` and `f(b)` differ in sign.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Numeric(format!(
            "root not bracketed on [{a}, {b}]: f = ({fa:e}, {fb:e})"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Numeric(format!("non-finite function value at {b}")));
        }
    }
    Err(Error::Numeric("Brent iteration limit reached".into()))
}

/// Scans the sample points in order and returns every bracketing pair.
pub fn sign_changes<F: FnMut(f64) -> f64>(mut f: F, points: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in points {
        let fx = f(x);
        if let Some((px, pf)) = prev {
            if pf.is_finite() && fx.is_finite() && pf.signum() != fx.signum() {
                out.push((px, x));
            }
        }
        prev = Some((x, fx));
    }
    out
}

/// All roots found by bracketing on `points` and polishing with Brent.
pub fn all_roots<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], xtol: f64) -> Vec<f64> {
    let brackets = sign_changes(&mut f, points);
    brackets
        .into_iter()
        .filter_map(|(a, b)| brent(&mut f, a, b, xtol).ok())
        .collect()
}
