use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;
use quarkonium::quad::{integrate_to_infinity, QuadOptions};
use quarkonium::special::{
    airy, airy_ai, airy_ai_prime, airy_ai_zero, airy_bi, gamma, gamma_complex,
    upper_incomplete_gamma,
};
use quarkonium::Complex64;

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-13);
    }

    #[test]
    fn complex_gamma_recurrence(re in -4.5f64..8.0, im in -6.0f64..6.0) {
        prop_assume!(im.abs() > 0.05 || re > 0.05);
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn complex_gamma_reflection(re in 0.05f64..0.95, im in -3.0f64..3.0) {
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn airy_wronskian(x in -40.0f64..8.0) {
        let a = airy(x);
        let w = a.ai * a.bip - a.aip * a.bi;
        prop_assert!((w * PI - 1.0).abs() < 1e-10, "W(x = {x}) = {w}");
    }

    #[test]
    fn airy_equation(x in -12.0f64..6.0) {
        // Ai'' = x Ai from a central difference of Ai'.
        let h = 1e-5;
        let second = (airy_ai_prime(x + h) - airy_ai_prime(x - h)) / (2.0 * h);
        let scale = airy_ai(x).abs().max(airy_ai_prime(x).abs()).max(1e-300);
        prop_assert!((second - x * airy_ai(x)).abs() <= 1e-7 * scale * (1.0 + x.abs()));
    }

    #[test]
    fn incomplete_gamma_recurrence(sr in -3.0f64..4.0, si in -2.0f64..2.0, zr in 0.2f64..12.0, zi in -5.0f64..5.0) {
        let s = Complex64::new(sr, si);
        let z = Complex64::new(zr, zi);
        let lhs = upper_incomplete_gamma(s + 1.0, z).unwrap();
        let rhs = s * upper_incomplete_gamma(s, z).unwrap() + (s * z.ln() - z).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(rhs.norm()));
    }
}

#[test]
fn reference_values() {
    assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(airy_ai(0.0), 0.355_028_053_887_817_2, max_relative = 1e-14);
    assert_relative_eq!(airy_bi(0.0), 0.614_926_627_446_000_7, max_relative = 1e-14);
    assert_relative_eq!(airy_ai(1.0), 0.135_292_416_312_881_4, max_relative = 1e-13);
    assert_relative_eq!(airy_ai(-5.0), 0.350_761_009_024_114_4, max_relative = 1e-11);
}

#[test]
fn airy_zeros_match_bisection() {
    let grid: Vec<f64> = (0..=20_000).map(|i| -40.0 * i as f64 / 20_000.0).collect();
    let mut zeros = Vec::new();
    for w in grid.windows(2) {
        let (mut hi, mut lo) = (w[0], w[1]);
        if (airy_ai(hi) < 0.0) == (airy_ai(lo) < 0.0) {
            continue;
        }
        let f_lo = airy_ai(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (airy_ai(mid) < 0.0) == (f_lo < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        zeros.push(0.5 * (lo + hi));
    }
    assert!(zeros.len() >= 20);
    for (k, z) in zeros.iter().take(20).enumerate() {
        let table = airy_ai_zero(k + 1).unwrap();
        assert!((table - z).abs() < 1e-10, "zero {}: {table} vs {z}", k + 1);
    }
}

#[test]
fn incomplete_gamma_against_ray_quadrature() {
    // Gamma(s, z) = int_0^inf (z + t)^(s-1) exp(-(z + t)) dt along the real ray from z.
    let s = Complex64::new(-1.3, 0.4);
    let z = Complex64::new(3.0, -2.0);
    let oracle = integrate_to_infinity(
        |t: f64| {
            let w = z + t;
            ((s - 1.0) * w.ln() - w).exp()
        },
        0.0,
        QuadOptions::with_rel(1e-13),
    )
    .unwrap()
    .value;
    let value = upper_incomplete_gamma(s, z).unwrap();
    assert!(
        (value - oracle).norm() <= 1e-10 * oracle.norm(),
        "{value} vs {oracle}"
    );
}

#[test]
fn incomplete_gamma_reduces_to_exponential() {
    for x in [0.1, 1.0, 7.5] {
        let z = Complex64::new(x, 0.3);
        let v = upper_incomplete_gamma(Complex64::new(1.0, 0.0), z).unwrap();
        assert!((v - (-z).exp()).norm() < 1e-13 * v.norm());
    }
}
