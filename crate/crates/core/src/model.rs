//! Physical parameters and the analytic dressed-state spectrum.
//!
//! Units: `HBAR = K_B = 1`, and the field frequency defaults to 1, so energies
//! are in units of ħω and temperatures in units of ħω/k_B.

use std::f64::consts::FRAC_PI_4;

use crate::error::{invalid, Result};

/// Reduced Planck constant.
pub const HBAR: f64 = 1.0;
/// Boltzmann constant.
pub const K_B: f64 = 1.0;

/// Cavity/atom constants. The detuning is always derived from `omega - omega_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega: f64,
    omega_a: f64,
    g: f64,
}

impl ModelParams {
    pub fn new(omega: f64, omega_a: f64, g: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(invalid("omega", omega, "field frequency must be positive"));
        }
        if !omega_a.is_finite() {
            return Err(invalid("omega_a", omega_a, "atomic frequency must be finite"));
        }
        if !(g.is_finite() && g > 0.0) {
            return Err(invalid("g", g, "coupling must be positive"));
        }
        Ok(Self { omega, omega_a, g })
    }

    /// Parameters with field frequency `omega` and atomic frequency `omega - delta`.
    pub fn with_detuning(omega: f64, g: f64, delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(invalid("delta", delta, "detuning must be finite"));
        }
        Self::new(omega, omega - delta, g)
    }

    /// Resonant cavity with ω = ω_a = 1.
    pub fn resonant(g: f64) -> Result<Self> {
        Self::new(1.0, 1.0, g)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// δ = ω − ω_a.
    pub fn detuning(&self) -> f64 {
        self.omega - self.omega_a
    }

    pub fn mode(&self, n: usize) -> DressedMode {
        let (e_plus, e_minus) = dressed_energies(n, self);
        DressedMode {
            n,
            theta: mixing_angle(n, self),
            rabi: rabi_frequency(n, self),
            e_plus,
            e_minus,
        }
    }
}

/// One doublet {|n+⟩, |n−⟩} mixing |n, e⟩ and |n+1, f⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedMode {
    pub n: usize,
    pub theta: f64,
    pub rabi: f64,
    pub e_plus: f64,
    pub e_minus: f64,
}

impl DressedMode {
    pub fn cos_sin(&self) -> (f64, f64) {
        (self.theta.cos(), self.theta.sin())
    }
}

/// Ω_n(δ) = sqrt(δ² + (n+1)g²).
pub fn rabi_frequency(n: usize, p: &ModelParams) -> f64 {
    let d = p.detuning();
    (d * d + (n as f64 + 1.0) * p.g * p.g).sqrt()
}

/// θ_n with tan(2θ_n) = g·sqrt(n+1)/δ, on the branch 2θ_n ∈ (0, π).
pub fn mixing_angle(n: usize, p: &ModelParams) -> f64 {
    let d = p.detuning();
    if d == 0.0 {
        return FRAC_PI_4;
    }
    0.5 * (p.g * (n as f64 + 1.0).sqrt()).atan2(d)
}

/// (E₊(n), E₋(n)) = ħω(n + 1/2) ± ħΩ_n/2.
pub fn dressed_energies(n: usize, p: &ModelParams) -> (f64, f64) {
    let mid = HBAR * p.omega * (n as f64 + 0.5);
    let half = 0.5 * HBAR * rabi_frequency(n, p);
    (mid + half, mid - half)
}
