//! Entanglement thermodynamics of the time-averaged reduced atomic state.
//!
//! The reduced density operator is diag(P_e, P_f). Matching its eigenvalues
//! to a two-level canonical distribution Λ± = e^{±βε}/Z, with effective
//! energies −ε on the excited state and +ε on the ground state, defines the
//! entanglement inverse temperature β. With ε = ħω/2 the same β reproduces
//! the thermo-field-dynamics atomic populations.
//!
//! β is the primary quantity: it stays finite and continuous through
//! resonance, where T = 1/(k_B β) diverges.

use std::f64::consts::LN_2;

use crate::error::{invalid, Error, Result};
use crate::model::{HBAR, K_B};

/// Tolerance on P_e + P_f = 1 accepted by [`reduced_density`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Effective energy scale ε = ħω/2.
pub fn entanglement_energy(omega: f64) -> f64 {
    0.5 * HBAR * omega
}

/// diag(P_e, P_f), the atom-side reduced density operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensity {
    pub diag: [f64; 2],
}

impl ReducedDensity {
    /// (Λ₊, Λ₋) = (P_e, P_f).
    pub fn eigenvalues(&self) -> (f64, f64) {
        (self.diag[0], self.diag[1])
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.diag[0], 0.0], [0.0, self.diag[1]]]
    }

    /// Frobenius norm of [H, ρ] for a 2×2 real matrix H.
    pub fn commutator_norm(&self, h: [[f64; 2]; 2]) -> f64 {
        let r = self.matrix();
        let mut sum = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let hr: f64 = (0..2).map(|k| h[i][k] * r[k][j]).sum();
                let rh: f64 = (0..2).map(|k| r[i][k] * h[k][j]).sum();
                sum += (hr - rh).powi(2);
            }
        }
        sum.sqrt()
    }
}

pub fn reduced_density(p_e: f64, p_f: f64) -> Result<ReducedDensity> {
    let in_range = |x: f64| (0.0..=1.0).contains(&x);
    if !(in_range(p_e) && in_range(p_f) && (p_e + p_f - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
        return Err(Error::NotNormalized { p_e, p_f });
    }
    Ok(ReducedDensity { diag: [p_e, p_f] })
}

/// −Λ₊ log₂ Λ₊ − Λ₋ log₂ Λ₋ with 0 log 0 = 0.
pub fn entanglement_entropy(lambda_plus: f64, lambda_minus: f64) -> f64 {
    let h = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    h(lambda_plus) + h(lambda_minus)
}

/// Signed inverse temperature; a pure eigenvalue pair (one of Λ± zero)
/// saturates to |β| = ∞ and is kept out of the arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InverseTemperature {
    Finite(f64),
    /// Λ₋ = 0: all weight on the excited state.
    PositiveInfinity,
    /// Λ₊ = 0: all weight on the ground state.
    NegativeInfinity,
}

impl InverseTemperature {
    pub fn finite(self) -> Option<f64> {
        match self {
            InverseTemperature::Finite(b) => Some(b),
            _ => None,
        }
    }

    /// β as a float, with saturation mapped to ±∞. For display only.
    pub fn to_f64(self) -> f64 {
        match self {
            InverseTemperature::Finite(b) => b,
            InverseTemperature::PositiveInfinity => f64::INFINITY,
            InverseTemperature::NegativeInfinity => f64::NEG_INFINITY,
        }
    }

    /// T = 1/(k_B β); infinite at β = 0 and ±0 when saturated.
    pub fn temperature(self) -> f64 {
        match self {
            InverseTemperature::Finite(b) if b == 0.0 => f64::INFINITY,
            InverseTemperature::Finite(b) => 1.0 / (K_B * b),
            InverseTemperature::PositiveInfinity => 0.0,
            InverseTemperature::NegativeInfinity => -0.0,
        }
    }
}

/// β = ln(Λ₊/Λ₋) / (2ε).
pub fn inverse_temperature(
    lambda_plus: f64,
    lambda_minus: f64,
    epsilon: f64,
) -> Result<InverseTemperature> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(invalid("epsilon", epsilon, "energy scale must be positive"));
    }
    if !(lambda_plus >= 0.0 && lambda_minus >= 0.0) || lambda_plus + lambda_minus == 0.0 {
        return Err(Error::NotNormalized {
            p_e: lambda_plus,
            p_f: lambda_minus,
        });
    }
    Ok(if lambda_minus == 0.0 {
        InverseTemperature::PositiveInfinity
    } else if lambda_plus == 0.0 {
        InverseTemperature::NegativeInfinity
    } else if lambda_plus == lambda_minus {
        InverseTemperature::Finite(0.0)
    } else {
        InverseTemperature::Finite((lambda_plus / lambda_minus).ln() / (2.0 * epsilon))
    })
}

/// Z = e^{βε} + e^{−βε} = 2 cosh(βε).
pub fn partition_function(beta: f64, epsilon: f64) -> f64 {
    2.0 * (beta * epsilon).cosh()
}

// ln(2 cosh x) without overflow
fn ln_partition(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoFunctions {
    /// F = −ln Z / β; undefined at β = 0.
    pub free_energy: Option<f64>,
    /// U = −ε tanh(βε).
    pub internal_energy: f64,
    /// S = k_B β (U − F), in bits.
    pub entropy_bits: f64,
}

/// Canonical functions of the two-level effective Hamiltonian diag(−ε, +ε).
pub fn thermo_functions(beta: f64, epsilon: f64) -> ThermoFunctions {
    let x = beta * epsilon;
    let internal_energy = -epsilon * x.tanh();
    if beta == 0.0 {
        return ThermoFunctions {
            free_energy: None,
            internal_energy,
            entropy_bits: 1.0,
        };
    }
    let ln_z = ln_partition(x);
    let free_energy = -ln_z / beta;
    let entropy_nats = K_B * beta * (internal_energy - free_energy);
    ThermoFunctions {
        free_energy: Some(free_energy),
        internal_energy,
        entropy_bits: entropy_nats / (K_B * LN_2),
    }
}

/// (P_e, P_f) = (e^{βħω/2}, e^{−βħω/2}) / (e^{βħω/2} + e^{−βħω/2}).
pub fn tfd_populations(beta: f64, omega: f64) -> (f64, f64) {
    let x = beta * HBAR * omega;
    // logistic form of each ratio stays accurate for either sign of x
    (1.0 / (1.0 + (-x).exp()), 1.0 / (1.0 + x.exp()))
}

/// Everything the entanglement-temperature analysis reports for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub epsilon: f64,
    pub beta: InverseTemperature,
    /// Display quantity; ±∞ allowed.
    pub temperature: f64,
    /// None when β is saturated.
    pub z: Option<f64>,
    pub entropy_bits: f64,
    pub free_energy: Option<f64>,
    pub internal_energy: f64,
}

impl ThermoState {
    /// Analysis of limiting populations with ε = ħω/2.
    pub fn from_populations(p_e: f64, p_f: f64, omega: f64) -> Result<Self> {
        let rho = reduced_density(p_e, p_f)?;
        let (lambda_plus, lambda_minus) = rho.eigenvalues();
        let epsilon = entanglement_energy(omega);
        let beta = inverse_temperature(lambda_plus, lambda_minus, epsilon)?;
        let entropy_bits = entanglement_entropy(lambda_plus, lambda_minus);
        let (z, free_energy, internal_energy) = match beta {
            InverseTemperature::Finite(b) => {
                let f = thermo_functions(b, epsilon);
                (Some(partition_function(b, epsilon)), f.free_energy, f.internal_energy)
            }
            // ground state of the effective spectrum (-ε) when fully excited
            InverseTemperature::PositiveInfinity => (None, Some(-epsilon), -epsilon),
            InverseTemperature::NegativeInfinity => (None, Some(epsilon), epsilon),
        };
        Ok(Self {
            lambda_plus,
            lambda_minus,
            epsilon,
            beta,
            temperature: beta.temperature(),
            z,
            entropy_bits,
            free_energy,
            internal_energy,
        })
    }

    /// Dimensionless βε, the only combination fixed by the populations.
    pub fn beta_epsilon(&self) -> Option<f64> {
        self.beta.finite().map(|b| b * self.epsilon)
    }
}
