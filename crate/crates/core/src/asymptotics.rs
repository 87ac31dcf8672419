//! Closed-form limiting (infinite-time averaged) distributions.
//!
//! Cross terms between distinct dressed energies average to zero because
//! Ω_n > 0 and Ω_m ≠ Ω_n for m ≠ n whenever g > 0, so only the diagonal
//! dressed weights |a_n^±|² survive.

use crate::error::{invalid, Error, Result};
use crate::model::ModelParams;
use crate::states::DressedAmplitudes;

/// Largest |C_0² − e^{−n̄}| for which the Poisson mean formula is applied.
pub const POISSON_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticDistribution {
    /// P(n) for n = 0..=n_max+1.
    pub p_n: Vec<f64>,
    pub p_e: f64,
    pub p_f: f64,
    pub mean_n: f64,
    /// ⟨n⟩ − n̄.
    pub delta_n: f64,
}

impl AsymptoticDistribution {
    pub fn new(a: &DressedAmplitudes, p: &ModelParams, n_bar: f64) -> Self {
        let p_n = limiting_photon_distribution(a, p);
        let (p_e, p_f) = limiting_atom_populations(a, p);
        let mean_n = mean_photon_number(&p_n);
        Self {
            p_n,
            p_e,
            p_f,
            mean_n,
            delta_n: mean_n - n_bar,
        }
    }
}

// (|a_n^+|², |a_n^-|², cos²θ_n, sin²θ_n)
fn weights(a: &DressedAmplitudes, p: &ModelParams, n: usize) -> (f64, f64, f64, f64) {
    let (s, c) = p.mode(n).theta.sin_cos();
    (a.a_plus[n].norm_sqr(), a.a_minus[n].norm_sqr(), c * c, s * s)
}

/// P(n) for n = 0..=n_max+1.
pub fn limiting_photon_distribution(a: &DressedAmplitudes, p: &ModelParams) -> Vec<f64> {
    let mut dist = vec![0.0; a.len() + 1];
    for n in 0..a.len() {
        let (wp, wm, c2, s2) = weights(a, p, n);
        // doublet n feeds |n, e⟩ and |n+1, f⟩
        dist[n] += wp * c2 + wm * s2;
        dist[n + 1] += wp * s2 + wm * c2;
    }
    dist
}

/// (P_e, P_f) with P_f = 1 − P_e.
pub fn limiting_atom_populations(a: &DressedAmplitudes, p: &ModelParams) -> (f64, f64) {
    let p_e: f64 = (0..a.len())
        .map(|n| {
            let (wp, wm, c2, s2) = weights(a, p, n);
            wp * c2 + wm * s2
        })
        .sum();
    (p_e, 1.0 - p_e)
}

/// Σ_{n≥0} n P(n).
pub fn mean_photon_number(dist: &[f64]) -> f64 {
    dist.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
}

/// ⟨n⟩ = P_f + (n̄ − (1 − e^{−n̄}) sin²(γ/2)) / (1 − e^{−n̄} sin²(γ/2)),
/// valid only for coherent (Poisson) photon inputs.
pub fn mean_photon_closed_form(p_f: f64, n_bar: f64, gamma: f64, c0_sq: f64) -> Result<f64> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(invalid("n_bar", n_bar, "mean photon number must be >= 0"));
    }
    let vacuum = (-n_bar).exp();
    if !((c0_sq - vacuum).abs() <= POISSON_TOLERANCE) {
        return Err(Error::NonPoisson {
            c0_sq,
            expected: vacuum,
        });
    }
    let s2 = (0.5 * gamma).sin().powi(2);
    Ok(p_f + (n_bar - (1.0 - vacuum) * s2) / (1.0 - vacuum * s2))
}

/// Δn ≅ P_f − sin²(γ/2), the n̄ ≫ 1 limit of ⟨n⟩ − n̄.
pub fn photon_number_shift(p_f: f64, gamma: f64) -> f64 {
    p_f - (0.5 * gamma).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build_initial_state, dressed_amplitudes, poisson_coefficients};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, TAU};

    fn pipeline(delta: f64, n_bar: f64, gamma: f64, phi: f64) -> (ModelParams, DressedAmplitudes) {
        let p = ModelParams::with_detuning(1.0, 0.001, delta).unwrap();
        let photons = poisson_coefficients(n_bar, 1e-12).unwrap();
        let a = dressed_amplitudes(&build_initial_state(gamma, phi, photons).unwrap(), &p);
        (p, a)
    }

    #[test]
    fn vacuum_resonant_distribution() {
        let (p, a) = pipeline(0.0, 0.0, 0.0, 0.0);
        let dist = limiting_photon_distribution(&a, &p);
        assert_relative_eq!(dist[0], 0.5, epsilon = 1e-15);
        assert_relative_eq!(dist[1], 0.5, epsilon = 1e-15);
        assert!(dist[2..].iter().all(|&x| x == 0.0));
        assert_relative_eq!(mean_photon_number(&dist), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_detuned_excited_population() {
        let (p, a) = pipeline(0.0025, 0.0, 0.0, 0.0);
        let theta = p.mode(0).theta;
        let (p_e, p_f) = limiting_atom_populations(&a, &p);
        assert_relative_eq!(p_e, theta.cos().powi(4) + theta.sin().powi(4), epsilon = 1e-15);
        assert_eq!(p_e + p_f, 1.0);
    }

    #[test]
    fn mean_examples() {
        assert_eq!(mean_photon_number(&[1.0, 0.0, 0.0]), 0.0);
        assert_eq!(mean_photon_number(&[0.5, 0.5]), 0.5);
    }

    #[test]
    fn closed_form_limits() {
        assert_eq!(mean_photon_closed_form(0.3, 0.0, 1.0, 1.0).unwrap(), 0.3);
        let gamma = 1.234;
        let full = mean_photon_closed_form(0.4, 100.0, gamma, (-100.0f64).exp()).unwrap();
        assert!((full - (0.4 + 100.0 - (0.5 * gamma).sin().powi(2))).abs() < 1e-9);
        let err = mean_photon_closed_form(0.4, 1.0, gamma, 0.5).unwrap_err();
        assert!(matches!(err, Error::NonPoisson { .. }));
    }

    #[test]
    fn shift_examples() {
        assert!(photon_number_shift(0.5, FRAC_PI_2).abs() < 1e-15);
        assert_eq!(photon_number_shift(0.37, 0.0), 0.37);
    }

    #[test]
    fn closed_form_matches_summation() {
        for n_bar in [0.0, 1.0, 5.0, 100.0] {
            for gamma in [0.0, FRAC_PI_3] {
                for delta in [0.0, 0.01] {
                    let (p, a) = pipeline(delta, n_bar, gamma, 0.3);
                    let d = AsymptoticDistribution::new(&a, &p, n_bar);
                    let c0 = poisson_coefficients(n_bar, 1e-12).unwrap().get(0);
                    let closed = mean_photon_closed_form(d.p_f, n_bar, gamma, c0 * c0).unwrap();
                    assert!((closed - d.mean_n).abs() < 1e-6, "{n_bar} {gamma} {delta}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn distribution_is_normalized(
            delta in -0.02f64..0.02,
            n_bar in 0.0f64..120.0,
            gamma in 0.0f64..3.1,
            phi in 0.0f64..TAU,
        ) {
            let (p, a) = pipeline(delta, n_bar, gamma, phi);
            let d = AsymptoticDistribution::new(&a, &p, n_bar);
            prop_assert!((d.p_n.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            prop_assert!((0.0..=1.0).contains(&d.p_e));
            prop_assert_eq!(d.p_e + d.p_f, 1.0);
            prop_assert!(d.mean_n >= 0.0);
        }

        #[test]
        fn resonance_is_universal(n_bar in 0.0f64..100.0, gamma in 0.0f64..3.1, phi in 0.0f64..TAU) {
            let (p, a) = pipeline(0.0, n_bar, gamma, phi);
            let (p_e, _) = limiting_atom_populations(&a, &p);
            prop_assert!((p_e - 0.5).abs() < 1e-12);
        }
    }
}
