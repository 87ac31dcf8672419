//! Jaynes-Cummings dynamics and the thermodynamics of its time-averaged
//! atom-photon entanglement.
//!
//! The pipeline runs [`ModelParams`] and an [`InitialState`] through
//! [`dressed_amplitudes`], then either evolves exactly in time
//! ([`dynamics`]) or takes the infinite-time average in closed form
//! ([`asymptotics`]), and finally assigns an entanglement temperature to the
//! reduced atomic state ([`thermo`]).

pub mod asymptotics;
pub mod contour;
pub mod dynamics;
mod error;
pub mod model;
pub mod states;
pub mod sweeps;
pub mod thermo;

pub use asymptotics::AsymptoticDistribution;
pub use dynamics::{Horizon, Observable, OracleEstimate, StateVector};
pub use error::{Error, Result};
pub use model::{DressedMode, ModelParams, HBAR, K_B};
pub use states::{
    build_initial_state, dressed_amplitudes, poisson_coefficients, DressedAmplitudes,
    InitialState, PhotonCoefficients,
};
pub use thermo::{InverseTemperature, ThermoState};
