//! Exact unitary evolution by phase rotation in the dressed basis, plus a
//! brute-force finite-horizon time average used as an oracle for the closed
//! forms in [`crate::asymptotics`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::model::{ModelParams, HBAR};
use crate::states::DressedAmplitudes;

/// Oracle results whose convergence estimate exceeds this are flagged.
pub const CONVERGENCE_WARNING: f64 = 1e-3;

/// Fewest sample times the oracle accepts.
pub const MIN_SAMPLES: usize = 1000;

const BLOCK: usize = 2048;

/// Bare-basis amplitudes at time `t`: `amp_e[n] = ⟨n, e|Ψ(t)⟩` for
/// n = 0..=n_max and `amp_f[n] = ⟨n, f|Ψ(t)⟩` for n = 0..=n_max+1.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amp_e: Vec<Complex64>,
    pub amp_f: Vec<Complex64>,
    pub t: f64,
}

impl StateVector {
    fn zeros(n_modes: usize) -> Self {
        Self {
            amp_e: vec![Complex64::new(0.0, 0.0); n_modes],
            amp_f: vec![Complex64::new(0.0, 0.0); n_modes + 1],
            t: 0.0,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_e
            .iter()
            .chain(&self.amp_f)
            .map(|z| z.norm_sqr())
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
struct ModeCache {
    cos: f64,
    sin: f64,
    /// ħω(n + 1/2), the doublet's mean energy.
    centre: f64,
    rabi: f64,
}

fn mode_cache(len: usize, p: &ModelParams) -> Vec<ModeCache> {
    (0..len)
        .map(|n| {
            let m = p.mode(n);
            let (sin, cos) = m.theta.sin_cos();
            ModeCache {
                cos,
                sin,
                centre: 0.5 * (m.e_plus + m.e_minus),
                rabi: m.rabi,
            }
        })
        .collect()
}

fn evolve_into(a: &DressedAmplitudes, modes: &[ModeCache], t: f64, out: &mut StateVector) {
    out.t = t;
    out.amp_f[0] = Complex64::new(0.0, 0.0);
    for (n, m) in modes.iter().enumerate() {
        // e^{-iE±t/ħ} split into the doublet's common phase and e^{∓iΩt/2}, so
        // populations never see the large common phase
        let common = Complex64::from_polar(1.0, -m.centre * t / HBAR);
        let split = Complex64::from_polar(1.0, -0.5 * m.rabi * t);
        let plus = a.a_plus[n] * split;
        let minus = a.a_minus[n] * split.conj();
        out.amp_e[n] = common * (plus * m.cos - minus * m.sin);
        out.amp_f[n + 1] = common * (plus * m.sin + minus * m.cos);
    }
}

/// |Ψ(t)⟩ in the bare basis.
pub fn evolve(a: &DressedAmplitudes, p: &ModelParams, t: f64) -> StateVector {
    let modes = mode_cache(a.len(), p);
    let mut out = StateVector::zeros(a.len());
    evolve_into(a, &modes, t, &mut out);
    out
}

/// Inverse of [`evolve`]'s basis change: the dressed coefficients of `s`
/// (including the accumulated phases). The `amp_f[0]` component, which no
/// dressed state reaches, is discarded.
pub fn project_dressed(s: &StateVector, p: &ModelParams) -> DressedAmplitudes {
    let (a_plus, a_minus) = (0..s.amp_e.len())
        .map(|n| {
            let (sin, cos) = p.mode(n).theta.sin_cos();
            let (e, f) = (s.amp_e[n], s.amp_f[n + 1]);
            (e * cos + f * sin, f * cos - e * sin)
        })
        .unzip();
    DressedAmplitudes { a_plus, a_minus }
}

/// Σ_n |⟨n, e|Ψ(t)⟩|².
pub fn excited_probability_at(s: &StateVector) -> f64 {
    s.amp_e.iter().map(|z| z.norm_sqr()).sum()
}

/// P_t(n) for n = 0..=n_max+1.
pub fn photon_distribution_at(s: &StateVector) -> Vec<f64> {
    (0..s.amp_f.len())
        .map(|n| photon_probability_at(s, n))
        .collect()
}

fn photon_probability_at(s: &StateVector, n: usize) -> f64 {
    let e = s.amp_e.get(n).map_or(0.0, |z| z.norm_sqr());
    let f = s.amp_f.get(n).map_or(0.0, |z| z.norm_sqr());
    e + f
}

/// Σ_n n P_t(n).
pub fn mean_photon_number_at(s: &StateVector) -> f64 {
    (0..s.amp_f.len())
        .map(|n| n as f64 * photon_probability_at(s, n))
        .sum()
}

/// Quantity averaged by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    ExcitedProbability,
    PhotonProbability(usize),
    MeanPhotonNumber,
}

impl Observable {
    pub fn evaluate(&self, s: &StateVector) -> f64 {
        match *self {
            Observable::ExcitedProbability => excited_probability_at(s),
            Observable::PhotonProbability(n) => photon_probability_at(s, n),
            Observable::MeanPhotonNumber => mean_photon_number_at(s),
        }
    }
}

/// Finite-horizon time average of one observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub value: f64,
    /// Half the difference between the averages over [0, t_max/2] and [0, t_max].
    pub convergence: f64,
}

impl OracleEstimate {
    pub fn warning(&self) -> bool {
        !(self.convergence <= CONVERGENCE_WARNING)
    }
}

/// Sample times and horizon for the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizon {
    pub t_max: f64,
    pub samples: usize,
}

impl Horizon {
    pub fn new(t_max: f64, samples: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(invalid("t_max", t_max, "horizon must be positive"));
        }
        if samples < MIN_SAMPLES {
            return Err(invalid(
                "samples",
                samples as f64,
                "the oracle needs at least 1000 sample times",
            ));
        }
        Ok(Self { t_max, samples })
    }

    /// k-th of the uniformly spaced times covering [0, t_max] inclusive.
    pub fn time(&self, k: usize) -> f64 {
        self.t_max * k as f64 / (self.samples - 1) as f64
    }

    /// Number of leading samples that lie in [0, t_max/2].
    fn half_count(&self) -> usize {
        (self.samples - 1) / 2 + 1
    }
}

/// Horizon spanning `periods` cycles of the slowest frequency present in the
/// dynamics, sampled finely enough to resolve the fastest one.
///
/// Frequencies considered are the Rabi frequencies of doublets carrying
/// weight above `weight_cutoff` and the beats between them.
pub fn default_horizon(
    a: &DressedAmplitudes,
    p: &ModelParams,
    periods: f64,
    weight_cutoff: f64,
) -> Result<Horizon> {
    let rabi: Vec<f64> = (0..a.len())
        .filter(|&n| a.a_plus[n].norm_sqr() + a.a_minus[n].norm_sqr() > weight_cutoff)
        .map(|n| p.mode(n).rabi)
        .collect();
    let fastest = rabi.iter().copied().fold(0.0, f64::max);
    let mut slowest = rabi.iter().copied().fold(f64::INFINITY, f64::min);
    // Rabi frequencies are monotone in n, so adjacent differences hold the minimum beat
    for w in rabi.windows(2) {
        slowest = slowest.min((w[1] - w[0]).abs());
    }
    if !slowest.is_finite() || slowest <= 0.0 {
        return Err(invalid("weight_cutoff", weight_cutoff, "no populated doublet"));
    }
    let t_max = periods * TAU / slowest;
    // four samples per fastest period
    let samples = ((4.0 * t_max * fastest / TAU).ceil() as usize).max(MIN_SAMPLES);
    Horizon::new(t_max, samples)
}

/// Average of `observable` over `horizon.samples` uniform times in [0, t_max].
pub fn time_average_oracle(
    a: &DressedAmplitudes,
    p: &ModelParams,
    observable: Observable,
    horizon: Horizon,
) -> OracleEstimate {
    time_average_observables(a, p, &[observable], horizon)[0]
}

/// Several observables averaged over a single pass of sample times.
///
/// Sample blocks may run in parallel; block sums are combined in index order,
/// so the result does not depend on scheduling.
pub fn time_average_observables(
    a: &DressedAmplitudes,
    p: &ModelParams,
    observables: &[Observable],
    horizon: Horizon,
) -> Vec<OracleEstimate> {
    let modes = mode_cache(a.len(), p);
    let half = horizon.half_count();
    let k = observables.len();
    let blocks = horizon.samples.div_ceil(BLOCK);

    let partial: Vec<(Vec<f64>, Vec<f64>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut state = StateVector::zeros(a.len());
            let mut head = vec![0.0; k];
            let mut all = vec![0.0; k];
            for i in b * BLOCK..((b + 1) * BLOCK).min(horizon.samples) {
                evolve_into(a, &modes, horizon.time(i), &mut state);
                for (j, obs) in observables.iter().enumerate() {
                    let v = obs.evaluate(&state);
                    all[j] += v;
                    if i < half {
                        head[j] += v;
                    }
                }
            }
            (head, all)
        })
        .collect();

    let mut head = vec![0.0; k];
    let mut all = vec![0.0; k];
    for (h, t) in &partial {
        for j in 0..k {
            head[j] += h[j];
            all[j] += t[j];
        }
    }
    (0..k)
        .map(|j| {
            let value = all[j] / horizon.samples as f64;
            let early = head[j] / half as f64;
            OracleEstimate {
                value,
                convergence: 0.5 * (early - value).abs(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build_initial_state, dressed_amplitudes, poisson_coefficients};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn amplitudes(p: &ModelParams, n_bar: f64, gamma: f64, phi: f64) -> DressedAmplitudes {
        let photons = poisson_coefficients(n_bar, 1e-12).unwrap();
        dressed_amplitudes(&build_initial_state(gamma, phi, photons).unwrap(), p)
    }

    #[test]
    fn zero_time_reconstructs_initial_state() {
        let p = ModelParams::with_detuning(1.0, 0.001, 0.003).unwrap();
        let photons = poisson_coefficients(4.0, 1e-12).unwrap();
        let s0 = build_initial_state(1.1, 2.3, photons).unwrap();
        let s = evolve(&dressed_amplitudes(&s0, &p), &p, 0.0);
        for n in 0..s.amp_e.len() {
            assert!((s.amp_e[n] - s0.excited_amplitude(n)).norm() < 1e-15);
        }
        for n in 0..s.amp_f.len() {
            assert!((s.amp_f[n] - s0.ground_amplitude(n)).norm() < 1e-15);
        }
    }

    #[test]
    fn vacuum_rabi_oscillation() {
        let g = 0.001;
        let p = ModelParams::resonant(g).unwrap();
        let a = amplitudes(&p, 0.0, 0.0, 0.0);
        for t in [0.0, 100.0, 1234.5, PI / g, 7.7e5] {
            let s = evolve(&a, &p, t);
            let expected = (0.5 * g * t).cos().powi(2);
            assert!((s.amp_e[0].norm_sqr() - expected).abs() < 1e-12);
            assert!((excited_probability_at(&s) - expected).abs() < 1e-12);
            let dist = photon_distribution_at(&s);
            assert!((dist[0] + dist[1] - 1.0).abs() < 1e-12);
        }
        let s = evolve(&a, &p, PI / g);
        assert!(excited_probability_at(&s) < 1e-12);
    }

    #[test]
    fn excited_probability_complements_ground() {
        let p = ModelParams::with_detuning(1.0, 0.001, -0.002).unwrap();
        let a = amplitudes(&p, 3.0, 0.7, 0.2);
        let s = evolve(&a, &p, 4321.0);
        let ground: f64 = s.amp_f.iter().map(|z| z.norm_sqr()).sum();
        assert!((excited_probability_at(&s) - (1.0 - ground)).abs() < 1e-12);
        let total: f64 = photon_distribution_at(&s).iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn projection_inverts_evolution_basis_change() {
        let p = ModelParams::with_detuning(1.0, 0.001, 0.004).unwrap();
        let a = amplitudes(&p, 6.0, 2.0, 4.0);
        let back = project_dressed(&evolve(&a, &p, 0.0), &p);
        for n in 0..a.len() {
            assert!((back.a_plus[n] - a.a_plus[n]).norm() < 1e-15);
            assert!((back.a_minus[n] - a.a_minus[n]).norm() < 1e-15);
        }
    }

    #[test]
    fn oracle_vacuum_excited_average() {
        let g = 0.001;
        let p = ModelParams::resonant(g).unwrap();
        let a = amplitudes(&p, 0.0, 0.0, 0.0);
        let horizon = Horizon::new(500.0 * TAU / g, 20_000).unwrap();
        let est = time_average_oracle(&a, &p, Observable::ExcitedProbability, horizon);
        assert!((est.value - 0.5).abs() < 2.0 / (g * horizon.t_max));
        assert!(!est.warning());
    }

    #[test]
    fn oracle_warns_on_short_horizon() {
        let g = 0.001;
        let p = ModelParams::resonant(g).unwrap();
        let a = amplitudes(&p, 0.0, 0.0, 0.0);
        let est = time_average_oracle(
            &a,
            &p,
            Observable::ExcitedProbability,
            Horizon::new(10.0 / g, 1000).unwrap(),
        );
        assert!(est.warning(), "convergence = {}", est.convergence);
    }

    #[test]
    fn oracle_is_deterministic() {
        let p = ModelParams::with_detuning(1.0, 0.001, 0.002).unwrap();
        let a = amplitudes(&p, 5.0, 1.0, 0.5);
        let h = Horizon::new(1e6, 9_999).unwrap();
        let obs = [Observable::ExcitedProbability, Observable::MeanPhotonNumber];
        let first = time_average_observables(&a, &p, &obs, h);
        let second = time_average_observables(&a, &p, &obs, h);
        assert_eq!(first, second);
        let single = time_average_oracle(&a, &p, Observable::MeanPhotonNumber, h);
        assert_eq!(single, first[1]);
    }

    #[test]
    fn horizon_validation() {
        assert!(Horizon::new(0.0, 5000).is_err());
        assert!(Horizon::new(1.0, 999).is_err());
        let h = Horizon::new(10.0, 1001).unwrap();
        assert_eq!(h.time(0), 0.0);
        assert_eq!(h.time(1000), 10.0);
        assert_eq!(h.half_count(), 501);
    }

    #[test]
    fn default_horizon_covers_slowest_beat() {
        let g = 0.001;
        let p = ModelParams::resonant(g).unwrap();
        let a = amplitudes(&p, 0.0, 0.0, 0.0);
        let h = default_horizon(&a, &p, 1e3, 1e-12).unwrap();
        assert_relative_eq!(h.t_max, 1e3 * TAU / g, max_relative = 1e-12);
        assert!(h.samples >= 4000);
    }
}
