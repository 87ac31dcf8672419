//! Batch computations behind the data exports: detuning scans, isotherm grids
//! over the Bloch angles, Bloch-sphere coordinates, time series and the
//! oracle-versus-closed-form check.

use std::f64::consts::{FRAC_PI_3, PI};

use rayon::prelude::*;

use crate::asymptotics::{
    limiting_atom_populations, limiting_photon_distribution, AsymptoticDistribution,
};
use crate::contour::{level_set, Grid, Polyline};
use crate::dynamics::{
    evolve, excited_probability_at, mean_photon_number_at, time_average_observables, Horizon,
    Observable,
};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::states::{
    build_initial_state, dressed_amplitudes, poisson_coefficients, PhotonCoefficients,
};
use crate::thermo::{InverseTemperature, ThermoState};

/// Default Fock-space tail bound.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-12;

/// `count` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    let bad = |reason| Error::InvalidRange {
        min,
        max,
        count,
        reason,
    };
    if count < 2 {
        return Err(bad("at least two points are required"));
    }
    if !(min.is_finite() && max.is_finite()) || max <= min {
        return Err(bad("range must be finite with max > min"));
    }
    let span = max - min;
    Ok((0..count)
        .map(|k| {
            if k == count - 1 {
                max
            } else {
                min + span * k as f64 / (count - 1) as f64
            }
        })
        .collect())
}

/// Limiting distribution and entanglement thermodynamics of one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateAnalysis {
    pub distribution: AsymptoticDistribution,
    pub thermo: ThermoState,
}

pub fn analyze(
    params: &ModelParams,
    photons: &PhotonCoefficients,
    gamma: f64,
    phi: f64,
) -> Result<StateAnalysis> {
    let state = build_initial_state(gamma, phi, photons.clone())?;
    let amps = dressed_amplitudes(&state, params);
    let distribution = AsymptoticDistribution::new(&amps, params, photons.n_bar());
    let thermo = ThermoState::from_populations(distribution.p_e, distribution.p_f, params.omega())?;
    Ok(StateAnalysis {
        distribution,
        thermo,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningRow {
    pub delta: f64,
    pub mean_n: f64,
    pub delta_n: f64,
    pub entropy_bits: f64,
    pub beta: InverseTemperature,
    pub beta_epsilon: Option<f64>,
    pub p_e: f64,
    pub p_f: f64,
}

/// One row per detuning, in the order of `deltas`.
pub fn detuning_scan(
    omega: f64,
    g: f64,
    n_bar: f64,
    gamma: f64,
    phi: f64,
    deltas: &[f64],
    tail_bound: f64,
) -> Result<Vec<DetuningRow>> {
    let photons = poisson_coefficients(n_bar, tail_bound)?;
    deltas
        .par_iter()
        .map(|&delta| {
            let params = ModelParams::with_detuning(omega, g, delta)?;
            let a = analyze(&params, &photons, gamma, phi)?;
            Ok(DetuningRow {
                delta,
                mean_n: a.distribution.mean_n,
                delta_n: a.distribution.delta_n,
                entropy_bits: a.thermo.entropy_bits,
                beta: a.thermo.beta,
                beta_epsilon: a.thermo.beta_epsilon(),
                p_e: a.distribution.p_e,
                p_f: a.distribution.p_f,
            })
        })
        .collect()
}

/// β sampled over (γ, φ); rows are γ, columns φ.
#[derive(Debug, Clone, PartialEq)]
pub struct IsothermGrid {
    pub gammas: Vec<f64>,
    pub phis: Vec<f64>,
    pub beta: Vec<InverseTemperature>,
}

impl IsothermGrid {
    pub fn beta_at(&self, i: usize, j: usize) -> InverseTemperature {
        self.beta[i * self.phis.len() + j]
    }

    /// Scalar field for contouring; saturated nodes map to ±∞, which edge
    /// interpolation places at the finite endpoint.
    pub fn to_grid(&self) -> Grid {
        Grid::new(
            self.gammas.clone(),
            self.phis.clone(),
            self.beta.iter().map(|b| b.to_f64()).collect(),
        )
    }
}

pub fn isotherm_grid(
    params: &ModelParams,
    n_bar: f64,
    gammas: &[f64],
    phis: &[f64],
    tail_bound: f64,
) -> Result<IsothermGrid> {
    let photons = poisson_coefficients(n_bar, tail_bound)?;
    let rows: Vec<Vec<InverseTemperature>> = gammas
        .par_iter()
        .map(|&gamma| {
            phis.iter()
                .map(|&phi| {
                    let amps = dressed_amplitudes(&build_initial_state(gamma, phi, photons.clone())?, params);
                    let (p_e, p_f) = limiting_atom_populations(&amps, params);
                    Ok(ThermoState::from_populations(p_e, p_f, params.omega())?.beta)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(IsothermGrid {
        gammas: gammas.to_vec(),
        phis: phis.to_vec(),
        beta: rows.into_iter().flatten().collect(),
    })
}

/// Level set of β; points are (γ, φ).
#[derive(Debug, Clone, PartialEq)]
pub struct Isotherm {
    pub beta: f64,
    pub curves: Vec<Polyline>,
}

impl Isotherm {
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

pub fn isotherms(grid: &IsothermGrid, levels: &[f64]) -> Vec<Isotherm> {
    let field = grid.to_grid();
    levels
        .iter()
        .map(|&beta| Isotherm {
            beta,
            curves: level_set(&field, beta),
        })
        .collect()
}

/// (sin γ cos φ, sin γ sin φ, cos γ).
pub fn bloch_point(gamma: f64, phi: f64) -> [f64; 3] {
    let (sg, cg) = gamma.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [sg * cp, sg * sp, cg]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSample {
    pub t: f64,
    pub p_e: f64,
    pub mean_n: f64,
    /// Mean of `p_e` over this and all earlier samples.
    pub running_p_e: f64,
}

pub fn time_series(
    params: &ModelParams,
    photons: &PhotonCoefficients,
    gamma: f64,
    phi: f64,
    horizon: Horizon,
) -> Result<Vec<TimeSample>> {
    let amps = dressed_amplitudes(&build_initial_state(gamma, phi, photons.clone())?, params);
    let raw: Vec<(f64, f64, f64)> = (0..horizon.samples)
        .into_par_iter()
        .map(|k| {
            let t = horizon.time(k);
            let s = evolve(&amps, params, t);
            (t, excited_probability_at(&s), mean_photon_number_at(&s))
        })
        .collect();
    let mut sum = 0.0;
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(k, (t, p_e, mean_n))| {
            sum += p_e;
            TimeSample {
                t,
                p_e,
                mean_n,
                running_p_e: sum / (k + 1) as f64,
            }
        })
        .collect())
}

/// One parameter set for the oracle check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCase {
    pub label: String,
    pub delta: f64,
    pub n_bar: f64,
    pub gamma: f64,
    pub phi: f64,
}

/// Five sets spanning δ ∈ {0, 0.005}, n̄ ∈ {0, 1, 100}, γ ∈ {0, π/3}.
pub fn default_oracle_suite() -> Vec<OracleCase> {
    let case = |label: &str, delta, n_bar, gamma, phi| OracleCase {
        label: label.to_string(),
        delta,
        n_bar,
        gamma,
        phi,
    };
    vec![
        case("resonant-vacuum", 0.0, 0.0, 0.0, 0.0),
        case("detuned-vacuum", 0.005, 0.0, 0.0, 0.0),
        case("resonant-coherent-1", 0.0, 1.0, FRAC_PI_3, 0.0),
        case("detuned-coherent-1", 0.005, 1.0, FRAC_PI_3, PI / 4.0),
        case("detuned-coherent-100", 0.005, 100.0, FRAC_PI_3, PI / 2.0),
    ]
}

/// Highest photon index compared individually by the oracle check.
pub const ORACLE_PHOTON_INDICES: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub quantity: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub convergence: f64,
    pub pass: bool,
}

impl Comparison {
    pub fn difference(&self) -> f64 {
        (self.closed_form - self.oracle).abs()
    }

    pub fn warning(&self) -> bool {
        !(self.convergence <= crate::dynamics::CONVERGENCE_WARNING)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub case: OracleCase,
    pub comparisons: Vec<Comparison>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }

    pub fn warnings(&self) -> usize {
        self.comparisons.iter().filter(|c| c.warning()).count()
    }
}

/// Compares the closed-form P_e, P(0..=10) and ⟨n⟩ with their oracle averages.
pub fn oracle_check(
    case: &OracleCase,
    omega: f64,
    g: f64,
    horizon: Horizon,
    tail_bound: f64,
    tolerance: f64,
) -> Result<OracleReport> {
    let params = ModelParams::with_detuning(omega, g, case.delta)?;
    let photons = poisson_coefficients(case.n_bar, tail_bound)?;
    let amps = dressed_amplitudes(
        &build_initial_state(case.gamma, case.phi, photons)?,
        &params,
    );

    let dist = limiting_photon_distribution(&amps, &params);
    let (p_e, _) = limiting_atom_populations(&amps, &params);
    let mean_n = crate::asymptotics::mean_photon_number(&dist);

    let mut observables = vec![Observable::ExcitedProbability];
    let mut closed = vec![("P_e".to_string(), p_e)];
    for n in 0..=ORACLE_PHOTON_INDICES {
        observables.push(Observable::PhotonProbability(n));
        closed.push((format!("P({n})"), dist.get(n).copied().unwrap_or(0.0)));
    }
    observables.push(Observable::MeanPhotonNumber);
    closed.push(("<n>".to_string(), mean_n));

    let estimates = time_average_observables(&amps, &params, &observables, horizon);
    let comparisons = closed
        .into_iter()
        .zip(estimates)
        .map(|((quantity, closed_form), est)| Comparison {
            pass: (closed_form - est.value).abs() <= tolerance,
            quantity,
            closed_form,
            oracle: est.value,
            convergence: est.convergence,
        })
        .collect();
    Ok(OracleReport {
        case: case.clone(),
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn linspace_endpoints_exact() {
        let v = linspace(-0.01, 0.01, 401).unwrap();
        assert_eq!(v[0], -0.01);
        assert_eq!(v[200], 0.0);
        assert_eq!(v[400], 0.01);
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(1.0, 1.0, 5).is_err());
        assert!(linspace(0.0, f64::NAN, 5).is_err());
    }

    #[test]
    fn bloch_examples() {
        assert_eq!(bloch_point(0.0, 1.234), [0.0, 0.0, 1.0]);
        let p = bloch_point(PI / 2.0, 0.0);
        assert!((p[0] - 1.0).abs() < 1e-15 && p[1] == 0.0 && p[2].abs() < 1e-15);
    }

    #[test]
    fn scan_is_symmetric_in_detuning_for_excited_atom() {
        let deltas = linspace(-0.01, 0.01, 21).unwrap();
        let rows = detuning_scan(1.0, 0.001, 0.0, 0.0, 0.0, &deltas, DEFAULT_TAIL_BOUND).unwrap();
        for k in 0..rows.len() {
            let mirror = rows[rows.len() - 1 - k];
            assert!((rows[k].mean_n - mirror.mean_n).abs() < 1e-10);
        }
        let centre = rows[10];
        assert_eq!(centre.delta, 0.0);
        assert_eq!(centre.beta, InverseTemperature::Finite(0.0));
        assert!((centre.entropy_bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vacuum_time_series_is_rabi_oscillation() {
        let g = 0.001;
        let params = ModelParams::resonant(g).unwrap();
        let photons = poisson_coefficients(0.0, DEFAULT_TAIL_BOUND).unwrap();
        let horizon = Horizon::new(50.0 * TAU / g, 5001).unwrap();
        let rows = time_series(&params, &photons, 0.0, 0.0, horizon).unwrap();
        for r in &rows {
            assert!((r.p_e - (0.5 * g * r.t).cos().powi(2)).abs() < 1e-10);
        }
        let last = rows.last().unwrap();
        assert!((last.running_p_e - 0.5).abs() < 2.0 / (g * horizon.t_max) + 1e-4);
    }

    #[test]
    fn time_series_starts_from_initial_populations() {
        let params = ModelParams::with_detuning(1.0, 0.001, 0.002).unwrap();
        let photons = poisson_coefficients(2.0, DEFAULT_TAIL_BOUND).unwrap();
        let gamma = 1.2;
        let rows =
            time_series(&params, &photons, gamma, 0.4, Horizon::new(1e4, 1000).unwrap()).unwrap();
        let c0_sq = photons.get(0).powi(2);
        let s2 = (0.5 * gamma).sin().powi(2);
        let expected = (0.5 * gamma).cos().powi(2) / (1.0 - c0_sq * s2);
        assert!((rows[0].p_e - expected).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grid_node_is_an_error() {
        let params = ModelParams::resonant(0.001).unwrap();
        let err = isotherm_grid(&params, 0.0, &[0.0, PI], &[0.0, 1.0], DEFAULT_TAIL_BOUND);
        assert!(matches!(err, Err(Error::DegenerateInitialState { .. })));
    }
}
