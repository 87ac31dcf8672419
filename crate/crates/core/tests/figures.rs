//! Figure-level properties of the scans and isotherm grid.

use std::f64::consts::{PI, TAU};

use jcm_core::sweeps::{bloch_point, detuning_scan, isotherm_grid, isotherms, linspace};
use jcm_core::ModelParams;

#[test]
fn vacuum_scan_entropy_and_mean_track_each_other() {
    // with n̄ = 0 and γ = 0, ⟨n⟩ = P_f, and entropy rises with P_f up to 1/2
    let deltas = linspace(-0.01, 0.01, 101).unwrap();
    let rows = detuning_scan(1.0, 0.001, 0.0, 0.0, 0.0, &deltas, 1e-12).unwrap();
    for r in &rows {
        assert!((r.mean_n - r.p_f).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&r.entropy_bits));
        assert!((0.0..=1.0).contains(&r.p_e) && (0.0..=1.0).contains(&r.p_f));
    }
    for w in rows[..=50].windows(2) {
        assert!(w[1].mean_n >= w[0].mean_n);
        assert!(w[1].entropy_bits >= w[0].entropy_bits);
    }
}

#[test]
fn zero_isotherm_lies_between_the_plus_minus_tenth_isotherms() {
    let p = ModelParams::with_detuning(1.0, 0.001, 0.01).unwrap();
    let gammas = linspace(0.0, PI, 91).unwrap();
    let phis = linspace(0.0, TAU, 73).unwrap();
    let grid = isotherm_grid(&p, 100.0, &gammas, &phis, 1e-12).unwrap();

    let sets = isotherms(&grid, &[0.1, 0.0, -0.1]);
    // each meridian crosses every one of these levels exactly once
    let crossing = |level: usize, phi: f64| -> f64 {
        let hits: Vec<f64> = sets[level]
            .curves
            .iter()
            .flat_map(|c| c.points.iter())
            .filter(|(_, ph)| *ph == phi)
            .map(|(g, _)| *g)
            .collect();
        assert!(!hits.is_empty(), "level {level} misses phi = {phi}");
        assert!(hits.iter().all(|h| (h - hits[0]).abs() < 1e-12), "{hits:?}");
        hits[0]
    };
    for &phi in &phis {
        assert!(crossing(0, phi) < crossing(1, phi));
        assert!(crossing(1, phi) < crossing(2, phi));
    }
}

#[test]
fn bloch_points_are_on_the_unit_sphere() {
    for gamma in linspace(0.0, PI, 37).unwrap() {
        for phi in linspace(0.0, TAU, 73).unwrap() {
            let [x, y, z] = bloch_point(gamma, phi);
            assert!((x * x + y * y + z * z - 1.0).abs() < 1e-12);
        }
    }
}
