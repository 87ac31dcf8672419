use thiserror::Error;

/// Errors raised when inputs fall outside the domain of the model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "initial state is degenerate: C_0^2 sin^2(gamma/2) = {weight} leaves no component outside |0,f>"
    )]
    DegenerateInitialState { weight: f64 },

    #[error("populations ({p_e}, {p_f}) do not sum to one")]
    NotNormalized { p_e: f64, p_f: f64 },

    #[error("C_0^2 = {c0_sq} is not the Poisson vacuum weight e^-n_bar = {expected}")]
    NonPoisson { c0_sq: f64, expected: f64 },

    #[error("invalid range [{min}, {max}] with {count} points: {reason}")]
    InvalidRange {
        min: f64,
        max: f64,
        count: usize,
        reason: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
