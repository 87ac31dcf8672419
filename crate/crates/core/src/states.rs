//! Separable atom-photon initial states and their dressed-basis amplitudes.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::model::ModelParams;

/// Smallest Fock cutoff emitted by [`poisson_coefficients`].
pub const MIN_CUTOFF: usize = 32;

/// Largest normalization weight C_0² sin²(γ/2) accepted before the state is
/// considered to be entirely |0, f⟩.
pub const EXCLUDED_STATE_TOLERANCE: f64 = 1e-12;

/// Real, nonnegative photon amplitudes C_0..=C_{n_max}.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonCoefficients {
    c: Vec<f64>,
    n_bar: f64,
}

impl PhotonCoefficients {
    pub fn amplitudes(&self) -> &[f64] {
        &self.c
    }

    /// C_n, zero past the cutoff.
    pub fn get(&self, n: usize) -> f64 {
        self.c.get(n).copied().unwrap_or(0.0)
    }

    /// Mean of the Poisson distribution the coefficients were drawn from.
    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }

    pub fn n_max(&self) -> usize {
        self.c.len() - 1
    }

    /// Σ n C_n² over the truncated, renormalized coefficients.
    pub fn mean(&self) -> f64 {
        self.c
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c * c)
            .sum()
    }
}

/// Coherent-state photon amplitudes C_n = e^{−n̄/2} n̄^{n/2} / sqrt(n!).
///
/// The cutoff is the first index at which the retained mass reaches
/// `1 - tail_bound`, never below [`MIN_CUTOFF`]; the kept coefficients are
/// renormalized.
pub fn poisson_coefficients(n_bar: f64, tail_bound: f64) -> Result<PhotonCoefficients> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(invalid("n_bar", n_bar, "mean photon number must be >= 0"));
    }
    if !(tail_bound > 0.0 && tail_bound <= 1e-6) {
        return Err(invalid("tail_bound", tail_bound, "must lie in (0, 1e-6]"));
    }

    let ln_mean = n_bar.ln();
    let mut probs = Vec::with_capacity(MIN_CUTOFF + 1);
    let mut ln_p = -n_bar;
    let mut mass = 0.0;
    let mut n = 0usize;
    loop {
        if n > 0 {
            ln_p += ln_mean - (n as f64).ln();
        }
        // ln_p is -inf for n > 0 when n_bar = 0
        let p = if ln_p.is_finite() { ln_p.exp() } else { 0.0 };
        probs.push(p);
        mass += p;
        let done = mass >= 1.0 - tail_bound
            // rounding can leave the partial sum a few ulps short of the bound
            || (n as f64 > n_bar && p < f64::EPSILON * tail_bound);
        if done && n >= MIN_CUTOFF {
            break;
        }
        n += 1;
    }

    let total: f64 = probs.iter().sum();
    let c = probs.iter().map(|p| (p / total).sqrt()).collect();
    Ok(PhotonCoefficients { c, n_bar })
}

/// Ψ(0) = 𝒩 Σ C_n |n⟩(cos(γ/2)|e⟩ + e^{iφ} sin(γ/2)|f⟩) with |0, f⟩ removed.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    gamma: f64,
    phi: f64,
    photons: PhotonCoefficients,
    norm: f64,
}

impl InitialState {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn photons(&self) -> &PhotonCoefficients {
        &self.photons
    }

    /// 𝒩 = 1/sqrt(1 − C_0² sin²(γ/2)).
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// ⟨n, e|Ψ(0)⟩.
    pub fn excited_amplitude(&self, n: usize) -> Complex64 {
        Complex64::from(self.norm * self.photons.get(n) * (0.5 * self.gamma).cos())
    }

    /// ⟨n, f|Ψ(0)⟩, zero for n = 0.
    pub fn ground_amplitude(&self, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(
            self.norm * self.photons.get(n) * (0.5 * self.gamma).sin(),
            self.phi,
        )
    }
}

/// Builds the initial state; φ is accepted on the closed interval [0, 2π].
pub fn build_initial_state(
    gamma: f64,
    phi: f64,
    photons: PhotonCoefficients,
) -> Result<InitialState> {
    if !(0.0..=PI).contains(&gamma) {
        return Err(invalid("gamma", gamma, "Bloch polar angle must lie in [0, pi]"));
    }
    if !(0.0..=TAU).contains(&phi) {
        return Err(invalid("phi", phi, "Bloch azimuth must lie in [0, 2pi]"));
    }
    let c0 = photons.get(0);
    let s = (0.5 * gamma).sin();
    let weight = c0 * c0 * s * s;
    if weight >= 1.0 - EXCLUDED_STATE_TOLERANCE {
        return Err(Error::DegenerateInitialState { weight });
    }
    Ok(InitialState {
        gamma,
        phi,
        norm: 1.0 / (1.0 - weight).sqrt(),
        photons,
    })
}

/// Coefficients a_n^± of Ψ(0) in the dressed basis, n = 0..=n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedAmplitudes {
    pub a_plus: Vec<Complex64>,
    pub a_minus: Vec<Complex64>,
}

impl DressedAmplitudes {
    pub fn len(&self) -> usize {
        self.a_plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_plus.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.a_plus
            .iter()
            .zip(&self.a_minus)
            .map(|(p, m)| p.norm_sqr() + m.norm_sqr())
            .sum()
    }
}

/// Projects the initial state onto |n±⟩; C_{n_max+1} is taken as zero.
pub fn dressed_amplitudes(s: &InitialState, p: &ModelParams) -> DressedAmplitudes {
    let n_max = s.photons.n_max();
    let (sg, cg) = (0.5 * s.gamma).sin_cos();
    let phase = Complex64::from_polar(1.0, s.phi);
    let mut a_plus = Vec::with_capacity(n_max + 1);
    let mut a_minus = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (sin_t, cos_t) = p.mode(n).theta.sin_cos();
        let c_n = s.photons.get(n);
        let c_next = s.photons.get(n + 1);
        let excited = Complex64::from(c_n * cg);
        let ground = phase * (c_next * sg);
        a_plus.push(s.norm * (excited * cos_t + ground * sin_t));
        a_minus.push(s.norm * (ground * cos_t - excited * sin_t));
    }
    DressedAmplitudes { a_plus, a_minus }
}
