//! Airy functions of real argument, complex gamma and the complex upper
//! incomplete gamma function.
//!
//! Ai and Bi use the Maclaurin series on `|x| <= 2` and the standard
//! asymptotic expansions for `|x| > 8`. In between, values are carried by
//! Taylor steps of the defining ODE `y'' = x y`: from the origin on the
//! oscillatory side, and for Ai on the positive side backwards from an
//! asymptotic anchor at `x = 8`. Stepping towards the origin keeps the
//! dominant solution Bi from leaking into Ai. Bi on `2 < x <= 8` stays on
//! the Maclaurin series, whose terms are all positive there.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const BI0: f64 = 0.614_926_627_446_000_7;
const BIP0: f64 = 0.448_288_357_353_826_4;

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 8.0;
const TAYLOR_STEP: f64 = 0.5;

/// Values of Ai, Ai', Bi, Bi' at a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Airy {
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

/// Evaluates all four Airy functions at `x`.
///
/// Bi overflows to `+inf` for `x` above roughly 104; Ai underflows to zero.
pub fn airy(x: f64) -> Airy {
    if x.is_nan() {
        return Airy {
            ai: f64::NAN,
            aip: f64::NAN,
            bi: f64::NAN,
            bip: f64::NAN,
        };
    }
    if x > ASYMPTOTIC_LIMIT {
        asymptotic_positive(x)
    } else if x < -ASYMPTOTIC_LIMIT {
        asymptotic_negative(-x)
    } else if x > SERIES_LIMIT {
        let series = maclaurin(x);
        let (ai, aip) = ai_taylor_from_anchor(x);
        Airy {
            ai,
            aip,
            bi: series.bi,
            bip: series.bip,
        }
    } else if x < -SERIES_LIMIT {
        let (ai, aip) = propagate(0.0, AI0, AIP0, x);
        let (bi, bip) = propagate(0.0, BI0, BIP0, x);
        Airy { ai, aip, bi, bip }
    } else {
        maclaurin(x)
    }
}

pub fn airy_ai(x: f64) -> f64 {
    airy(x).ai
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy(x).aip
}

pub fn airy_bi(x: f64) -> f64 {
    airy(x).bi
}

pub fn airy_bi_prime(x: f64) -> f64 {
    airy(x).bip
}

/// The k-th zero of Ai, counting from k = 1 at about -2.338.
pub fn airy_ai_zero(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("Airy zero index starts at 1".into()));
    }
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    let mut x = -t.powf(2.0 / 3.0)
        * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
    for _ in 0..60 {
        let a = airy(x);
        let dx = a.ai / a.aip;
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    let a = airy(x);
    if a.ai.abs() < 1e-13 {
        Ok(x)
    } else {
        Err(Error::Numeric(format!(
            "Newton iteration for Airy zero {k} stalled at x = {x}, Ai = {:e}",
            a.ai
        )))
    }
}

fn maclaurin(x: f64) -> Airy {
    // f and g are the even-type and odd-type solutions with
    // f(0) = 1, f'(0) = 0, g(0) = 0, g'(0) = 1.
    let x3 = x * x * x;
    let (mut f, mut fp, mut g, mut gp) = (1.0, 0.0, x, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    let mut k = 1.0_f64;
    loop {
        fp += tf * x * x / (3.0 * k - 1.0);
        gp += tg * x * x / (3.0 * k);
        tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1e-300) && tg.abs() < 1e-18 * g.abs().max(1e-300)
            || k > 200.0
        {
            break;
        }
        k += 1.0;
    }
    Airy {
        ai: AI0 * f + AIP0 * g,
        aip: AI0 * fp + AIP0 * gp,
        bi: BI0 * f + BIP0 * g,
        bip: BI0 * fp + BIP0 * gp,
    }
}

/// Coefficients u_k and v_k of the asymptotic expansions, up to the point
/// where terms stop shrinking for the given zeta.
fn asymptotic_terms(zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let vk = -uk * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        let size = uk.abs().max(vk.abs()) / zeta.powi(k as i32);
        if size > last || size < 1e-18 {
            break;
        }
        last = size;
        u.push(uk);
        v.push(vk);
    }
    (u, v)
}

fn asymptotic_positive(x: f64) -> Airy {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = asymptotic_terms(zeta);
    let (mut su_alt, mut sv_alt, mut su, mut sv) = (0.0, 0.0, 0.0, 0.0);
    let mut zk = 1.0;
    for k in 0..u.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su_alt += sign * u[k] / zk;
        sv_alt += sign * v[k] / zk;
        su += u[k] / zk;
        sv += v[k] / zk;
        zk *= zeta;
    }
    let q = x.powf(0.25);
    let sp = PI.sqrt();
    let decay = (-zeta).exp();
    let growth = zeta.exp();
    Airy {
        ai: decay / (2.0 * sp * q) * su_alt,
        aip: -q * decay / (2.0 * sp) * sv_alt,
        bi: growth / (sp * q) * su,
        bip: q * growth / sp * sv,
    }
}

/// Expansions for Ai(-x), Bi(-x) with x > 0.
fn asymptotic_negative(x: f64) -> Airy {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = asymptotic_terms(zeta);
    let (mut p, mut q, mut r, mut s) = (0.0, 0.0, 0.0, 0.0);
    let mut zk = 1.0;
    for k in 0..u.len() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * u[k] / zk;
            r += sign * v[k] / zk;
        } else {
            q += sign * u[k] / zk;
            s += sign * v[k] / zk;
        }
        zk *= zeta;
    }
    let quarter = x.powf(0.25);
    let sp = PI.sqrt();
    let (sn, cs) = (zeta + PI / 4.0).sin_cos();
    Airy {
        ai: (sn * p - cs * q) / (sp * quarter),
        aip: -quarter * (cs * r + sn * s) / sp,
        bi: (cs * p + sn * q) / (sp * quarter),
        bip: quarter * (sn * r - cs * s) / sp,
    }
}

/// One Taylor step of `y'' = x y` from `x0` by `h`.
fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let mut a = [y, yp, 0.5 * x0 * y];
    let mut sum = a[0] + a[1] * h + a[2] * h * h;
    let mut dsum = a[1] + 2.0 * a[2] * h;
    let mut hk = h * h;
    let mut quiet = 0;
    for k in 3..200 {
        let kf = k as f64;
        // a_k = (x0 a_{k-2} + a_{k-3}) / (k (k-1))
        let next = (x0 * a[1] + a[0]) / (kf * (kf - 1.0));
        a = [a[1], a[2], next];
        dsum += kf * next * hk;
        hk *= h;
        let term = next * hk;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            quiet += 1;
            if quiet > 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (sum, dsum)
}

fn ai_taylor_from_anchor(x: f64) -> (f64, f64) {
    let anchor = asymptotic_positive(ASYMPTOTIC_LIMIT);
    propagate(ASYMPTOTIC_LIMIT, anchor.ai, anchor.aip, x)
}

/// Carries a solution of `y'' = x y` from `from` to `to` in Taylor steps.
fn propagate(from: f64, y: f64, yp: f64, to: f64) -> (f64, f64) {
    let span = to - from;
    let steps = (span.abs() / TAYLOR_STEP).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let (mut y, mut yp) = (y, yp);
    let mut x0 = from;
    for _ in 0..steps {
        (y, yp) = taylor_step(x0, y, yp, h);
        x0 += h;
    }
    (y, yp)
}

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// log Gamma(z) up to an additive multiple of 2 pi i. Only its exponential
/// is meaningful.
fn ln_gamma_unwrapped(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        pi.ln() - (pi * z).sin().ln() - ln_gamma_unwrapped(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut acc = Complex64::new(LANCZOS[0], 0.0);
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += *c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Gamma function of complex argument.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("gamma of non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Domain(format!("gamma has a pole at {}", z.re)));
    }
    finite_or_range(ln_gamma_unwrapped(z).exp(), "gamma")
}

/// Gamma function of a real argument.
pub fn gamma(x: f64) -> Result<f64> {
    gamma_complex(Complex64::new(x, 0.0)).map(|g| g.re)
}

fn finite_or_range(v: Complex64, what: &str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!("{what} overflows: {v}")))
    }
}

/// Distance from s to the nearest pole of Gamma(s).
fn pole_distance(s: Complex64) -> f64 {
    if s.re > 0.5 {
        return f64::INFINITY;
    }
    let nearest = s.re.round().min(0.0);
    Complex64::new(s.re - nearest, s.im).norm()
}

/// Radius beyond which the Legendre continued fraction is used.
fn cf_radius(s: Complex64) -> f64 {
    3.0 + 0.6 * s.re.max(0.0) + 0.5 * s.im.abs()
}

const CF_MAX_ARG: f64 = 0.9 * PI;
const ARC_RADIUS: f64 = 20.0;

/// Upper incomplete gamma function Gamma(s, z) on the principal branch.
///
/// A negative real `z` with a signed zero imaginary part is read as the
/// limit from above the cut.
pub fn upper_incomplete_gamma(s: Complex64, z: Complex64) -> Result<Complex64> {
    let finite = |c: Complex64| c.re.is_finite() && c.im.is_finite();
    if !finite(s) || !finite(z) {
        return Err(Error::Domain("non-finite incomplete gamma argument".into()));
    }
    let z = if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    };
    if z.norm() == 0.0 {
        if s.re > 0.0 {
            return gamma_complex(s);
        }
        return Err(Error::Domain(format!(
            "Gamma(s, 0) diverges for Re s = {} <= 0",
            s.re
        )));
    }
    let value = if z.norm() >= cf_radius(s) && z.arg().abs() < CF_MAX_ARG {
        continued_fraction(s, z)?
    } else if pole_distance(s) > 0.1 {
        gamma_complex(s)? - lower_series(s, z)?
    } else {
        anchored(s, z)?
    };
    finite_or_range(value, "incomplete gamma")
}

/// Lower incomplete gamma gamma(s, z) by its power series.
fn lower_series(s: Complex64, z: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    if z.re >= 0.0 {
        // z^s e^{-z} sum z^k / (s (s+1) ... (s+k))
        let mut term = 1.0 / s;
        sum += term;
        for k in 1..5000 {
            term *= z / (s + k as f64);
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                return Ok((s * z.ln() - z).exp() * sum);
            }
        }
    } else {
        // z^s sum (-z)^k / (k! (s+k))
        let mut power = Complex64::new(1.0, 0.0);
        for k in 0..5000 {
            if k > 0 {
                power *= -z / k as f64;
            }
            let term = power / (s + k as f64);
            sum += term;
            if k > 2 && term.norm() < 1e-17 * sum.norm() {
                return Ok((s * z.ln()).exp() * sum);
            }
        }
    }
    Err(Error::Numeric(format!(
        "incomplete gamma series did not converge at s = {s}, z = {z}"
    )))
}

fn continued_fraction(s: Complex64, z: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let tiny = Complex64::new(TINY, 0.0);
    let mut b = z + 1.0 - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let fi = i as f64;
        let an = -fi * (fi - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((s * z.ln() - z).exp() * h);
        }
    }
    Err(Error::Numeric(format!(
        "incomplete gamma continued fraction did not converge at s = {s}, z = {z} \
         (last partial value {h})"
    )))
}

/// Gamma(s, z) = Gamma(s, z1) + integral of t^{s-1} e^{-t} from z to z1, with
/// z1 placed where the continued fraction converges. Used when s sits close
/// to a pole of Gamma(s), where Gamma(s) - gamma(s, z) cancels badly.
fn anchored(s: Complex64, z: Complex64) -> Result<Complex64> {
    let radius = cf_radius(s).max(z.norm());
    let theta = z.arg().clamp(-0.85 * PI, 0.85 * PI);
    let z1 = Complex64::from_polar(radius, theta);
    let far = continued_fraction(s, z1)?;
    if radius > ARC_RADIUS {
        // The power series below would cancel through e^{|z|}-sized terms;
        // integrate along the arc |t| = |z| instead.
        let phi0 = z.arg();
        let arc = integrate(
            |phi: f64| {
                let t = Complex64::from_polar(radius, phi);
                Complex64::i() * (s * t.ln() - t).exp()
            },
            phi0,
            theta,
            QuadOptions {
                abs_tol: 0.0,
                rel_tol: 1e-13,
                max_intervals: 2000,
            },
        )?;
        return Ok(far + arc.value);
    }
    // Term k of the integral is (-1)^k / k! (z1^e - z^e) / e with e = s + k,
    // written as z^e expm1(e L) / e, L = log z1 - log z, to survive e -> 0.
    let ln_z = z.ln();
    let log_ratio = z1.ln() - ln_z;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ln_factorial = 0.0;
    for k in 0..5000 {
        if k > 0 {
            ln_factorial += (k as f64).ln();
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let e = s + k as f64;
        let x = e * log_ratio;
        let factor = if x.norm() < 1e-5 {
            log_ratio * (1.0 + x / 2.0 + x * x / 6.0)
        } else {
            (x.exp() - 1.0) / e
        };
        let term = sign * (e * ln_z - ln_factorial).exp() * factor;
        sum += term;
        // Terms grow until k passes |z1|, so only test for convergence after.
        if k as f64 > radius + 4.0 && term.norm() < 1e-17 * sum.norm().max(far.norm()) {
            return Ok(far + sum);
        }
    }
    Err(Error::Numeric(format!(
        "anchored incomplete gamma series did not converge at s = {s}, z = {z}"
    )))
}
