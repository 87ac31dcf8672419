//! Fixtures shared by the criterion benches.

use jcm_core::{build_initial_state, dressed_amplitudes, poisson_coefficients};
use jcm_core::{DressedAmplitudes, ModelParams};

/// The isotherm configuration: g = 0.001, n̄ = 100, δ = 0.01.
pub fn isotherm_params() -> ModelParams {
    ModelParams::with_detuning(1.0, 0.001, 0.01).expect("valid parameters")
}

pub fn coherent_amplitudes(params: &ModelParams, n_bar: f64, gamma: f64, phi: f64) -> DressedAmplitudes {
    let photons = poisson_coefficients(n_bar, 1e-12).expect("valid mean");
    let state = build_initial_state(gamma, phi, photons).expect("non-degenerate state");
    dressed_amplitudes(&state, params)
}
