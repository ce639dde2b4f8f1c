use std::f64::consts::PI;

use quarkonium::hta::{energy_real, CornellParams, MesonSystem, SpectroscopicLabel};
use quarkonium::quad::{integrate_to_infinity, QuadOptions};
use quarkonium::wavefunction::{
    density_grid, normalize_b, omega, psi_n, psi_n_numeric, Axis, WaveParams,
};
use quarkonium::Error;

fn charmonium() -> MesonSystem {
    MesonSystem::new(
        "cc",
        1.23,
        1.23,
        CornellParams::new(-1.6808, 0.4069, 0.5074).unwrap(),
    )
    .unwrap()
}

fn level(label: &str) -> (WaveParams, usize) {
    let label: SpectroscopicLabel = label.parse().unwrap();
    (
        WaveParams::for_level(&charmonium(), label).unwrap(),
        label.polynomial_index(),
    )
}

#[test]
fn closed_form_matches_quadrature_for_higher_levels() {
    for name in ["1P", "3S", "4S", "2P"] {
        let (w, n) = level(name);
        for r in [0.1, 0.6, 2.0] {
            for p in [-0.7, 0.0, 0.4, 1.5] {
                let a = psi_n(&w, n, r, p).unwrap();
                let b = psi_n_numeric(&w, n, r, p).unwrap();
                assert!(
                    (a - b).norm() <= 1e-7 * b.norm(),
                    "{name} ({r}, {p}): {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn density_is_even_in_momentum() {
    // psi(r, -p) = conj(psi(r, p)) for real constants.
    let (w, n) = level("1S");
    for r in [0.2, 1.0] {
        for p in [0.3, 1.1] {
            let a = psi_n(&w, n, r, p).unwrap();
            let b = psi_n(&w, n, r, -p).unwrap();
            assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
        }
    }
}

#[test]
fn omega_removes_the_phase() {
    let (w, n) = level("2S");
    let r = 0.8;
    let p = 0.6;
    let expected =
        psi_n(&w, n, r, p).unwrap() * quarkonium::Complex64::from_polar(1.0, 2.0 * p * r);
    assert!((omega(&w, n, r, p).unwrap() - expected).norm() < 1e-15);
}

#[test]
fn normalization_agrees_with_parseval() {
    for name in ["1S", "1P", "3S"] {
        let (w, n) = level(name);
        let nb = normalize_b(&w, n).unwrap();
        let kernel = w.kernel(n).unwrap();
        let parseval = integrate_to_infinity(
            |u: f64| u.powi(3) * kernel.eval(u).norm_sqr(),
            0.0,
            QuadOptions::with_rel(1e-11),
        )
        .unwrap()
        .value
            * 8.0
            * PI
            / 3.0;
        assert!(
            (parseval / nb.unit_total - 1.0).abs() < 1e-6,
            "{name}: {parseval} vs {}",
            nb.unit_total
        );
    }
}

#[test]
fn grid_densities_are_moduli() {
    let (w, n) = level("1S");
    let g = density_grid(
        &w,
        n,
        Axis::new(0.1, 2.0, 5).unwrap(),
        Axis::new(-1.0, 1.0, 5).unwrap(),
    )
    .unwrap();
    assert!(g.failures.is_empty());
    assert_eq!(g.densities.len(), 5);
    for (row_a, row_d) in g.amplitudes.iter().zip(&g.densities) {
        for (a, d) in row_a.iter().zip(row_d) {
            assert_eq!(a.norm_sqr(), *d);
        }
    }
}

#[test]
fn grid_records_failed_cells() {
    let (w, _) = level("1S");
    let g = density_grid(
        &w,
        7,
        Axis::new(0.5, 1.0, 2).unwrap(),
        Axis::new(0.0, 0.0, 1).unwrap(),
    )
    .unwrap();
    assert!(g.failures.is_empty() || g.failures.len() == 2);
    assert!(density_grid(
        &w,
        0,
        Axis::new(0.0, 1.0, 3).unwrap(),
        Axis::new(0.0, 1.0, 2).unwrap()
    )
    .is_err());
}

#[test]
fn bottom_charm_states_are_not_normalizable() {
    let sys = MesonSystem::new(
        "bc",
        4.19,
        1.23,
        CornellParams::new(105.67, 0.5157, 0.1763).unwrap(),
    )
    .unwrap();
    let w = WaveParams::for_level(&sys, "1S".parse().unwrap()).unwrap();
    assert!(w.kappa() < 0.5);
    assert!(matches!(
        psi_n(&w, 0, 1.0, 0.0),
        Err(Error::NonPhysical { .. })
    ));
}

#[test]
fn explicit_energy_matches_level_constructor() {
    let sys = charmonium();
    let label: SpectroscopicLabel = "2S".parse().unwrap();
    let e = energy_real(&sys, label.state()).unwrap();
    assert_eq!(
        WaveParams::at_energy(&sys, label, e).unwrap(),
        WaveParams::for_level(&sys, label).unwrap()
    );
}
