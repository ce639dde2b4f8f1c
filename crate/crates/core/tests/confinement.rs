use proptest::prelude::*;
use quarkonium::confinement::{airy_moment, moment_identity_check, Confinement1D};
use quarkonium::special::airy_ai_zero;

fn model() -> Confinement1D {
    Confinement1D::new(0.615, 0.4069).unwrap()
}

#[test]
fn ground_state_normalization_constant() {
    let m = model();
    let e0 = m.energy(0, 0.0).unwrap();
    let c1 = m.normalize(e0).unwrap();
    assert!((c1 - 0.33836).abs() < 5e-5, "c1 = {c1}");
    let refined = m
        .normalize_with(e0, quarkonium::quad::QuadOptions::with_rel(1e-12))
        .unwrap();
    assert!((refined / c1 - 1.0).abs() < 1e-8);
}

#[test]
fn closed_normalization_form_disagrees_with_quadrature() {
    // The square-root expression is kept for comparison only.
    let m = model();
    let c1 = m.normalize(m.energy(0, 0.0).unwrap()).unwrap();
    let s = m.normalization_sqrt_form();
    assert!(s.is_finite() && s > 0.0);
    assert!((s / c1 - 1.0).abs() > 0.5);
}

#[test]
fn moment_zero_closed_form() {
    // int_0^inf Ai(t + x)^2 dt = Ai'(x)^2 - x Ai(x)^2.
    for x in [-1.0, 0.0, 0.5, 2.0] {
        let a = quarkonium::special::airy(x);
        let exact = a.aip * a.aip - x * a.ai * a.ai;
        let v = airy_moment(0, x).unwrap();
        assert!((v - exact).abs() < 1e-12 * exact.abs().max(1e-300), "x={x}");
    }
}

#[test]
fn moment_identity_needs_positive_order() {
    assert!(moment_identity_check(0.0, 0).is_err());
}

proptest! {
    #[test]
    fn levels_follow_airy_zeros(n in 0usize..8, p in -3.0f64..3.0) {
        let m = model();
        let e = m.energy(n, p).unwrap();
        prop_assert!(m.psi(1.0, 0.0, p, e).abs() < 1e-10);
        let shift = e - m.energy(n, 0.0).unwrap();
        prop_assert!((shift - p * p / (2.0 * 0.615)).abs() < 1e-12 * (1.0 + e.abs()));
        prop_assert!((m.argument(0.0, 0.0, m.energy(n, 0.0).unwrap()) - airy_ai_zero(n + 1).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn moment_identity(x in -2.0f64..3.0, n in 1u32..=3) {
        prop_assert!(moment_identity_check(x, n).unwrap() < 1e-8);
    }

    #[test]
    fn time_factor_has_constant_modulus(r in 0.0f64..10.0, p in -3.0f64..3.0, t in -50.0f64..50.0, c1 in 0.1f64..2.0) {
        let m = model();
        let a = m.time_factor(c1, r, p, t).norm();
        let b = m.time_factor(c1, 0.0, 0.0, 0.0).norm();
        prop_assert!((a / b - 1.0).abs() < 1e-15);
    }
}
