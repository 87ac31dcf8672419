//! JSON run configuration.

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use jcm_core::sweeps::{linspace, OracleCase, DEFAULT_TAIL_BOUND};
use jcm_core::ModelParams;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    DetuningScan,
    IsothermGrid,
    BlochExport,
    TimeSeries,
    OracleCheck,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::DetuningScan => "detuning-scan",
            Mode::IsothermGrid => "isotherm-grid",
            Mode::BlochExport => "bloch-export",
            Mode::TimeSeries => "time-series",
            Mode::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        Ok(linspace(self.min, self.max, self.count)?)
    }
}

/// A single angle, or a grid of them.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AngleSpec {
    Value(f64),
    Grid(RangeSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(default = "one")]
    pub omega: f64,
    pub g: f64,
    /// ω − ω_a; mutually exclusive with `omega_a`.
    pub delta: Option<f64>,
    pub omega_a: Option<f64>,
}

impl ParamsConfig {
    pub fn model(&self) -> Result<ModelParams, CliError> {
        match (self.delta, self.omega_a) {
            (Some(_), Some(_)) => Err(CliError::Config(
                "params: give either delta or omega_a, not both".into(),
            )),
            (None, Some(omega_a)) => Ok(ModelParams::new(self.omega, omega_a, self.g)?),
            (delta, None) => Ok(ModelParams::with_detuning(
                self.omega,
                self.g,
                delta.unwrap_or(0.0),
            )?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSetConfig {
    pub label: String,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub n_bar: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub params: ParamsConfig,
    #[serde(default)]
    pub n_bar: f64,
    pub gamma: Option<AngleSpec>,
    pub phi: Option<AngleSpec>,
    pub delta_range: Option<RangeSpec>,
    #[serde(default)]
    pub beta_levels: Vec<f64>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub output_path: Option<PathBuf>,
    /// Level-set file written by isotherm-grid and read by bloch-export.
    pub levels_path: Option<PathBuf>,
    #[serde(default = "default_tail")]
    pub tail_bound: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub oracle_sets: Option<Vec<OracleSetConfig>>,
}

fn one() -> f64 {
    1.0
}

fn default_tail() -> f64 {
    DEFAULT_TAIL_BOUND
}

fn default_tolerance() -> f64 {
    1e-3
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
            .map_err(|e| CliError::Config(format!("{}: {}", path.display(), e)))
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn output(&self) -> Result<&Path, CliError> {
        self.output_path
            .as_deref()
            .ok_or_else(|| CliError::Config("output_path is not set".into()))
    }

    /// Explicit `levels_path`, else `<output stem>.levels.csv` next to the output.
    pub fn levels(&self) -> Result<PathBuf, CliError> {
        if let Some(p) = &self.levels_path {
            return Ok(p.clone());
        }
        let out = self.output()?;
        let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("isotherms");
        Ok(out.with_file_name(format!("{stem}.levels.csv")))
    }

    pub fn single_angle(&self, name: &str, spec: Option<AngleSpec>) -> Result<f64, CliError> {
        match spec {
            None => Ok(0.0),
            Some(AngleSpec::Value(v)) => Ok(v),
            Some(AngleSpec::Grid(_)) => Err(CliError::Config(format!(
                "{name}: a single value is required in this mode"
            ))),
        }
    }

    pub fn angle_grid(spec: Option<AngleSpec>, max: f64, count: usize) -> Result<Vec<f64>, CliError> {
        match spec {
            None => Ok(linspace(0.0, max, count)?),
            Some(AngleSpec::Grid(r)) => r.values(),
            Some(AngleSpec::Value(v)) => Err(CliError::Config(format!(
                "expected a grid {{min, max, count}}, got the single value {v}"
            ))),
        }
    }

    /// γ ∈ [0, π] at 1° steps unless configured.
    pub fn gamma_grid(&self) -> Result<Vec<f64>, CliError> {
        Self::angle_grid(self.gamma, PI, 181)
    }

    /// φ ∈ [0, 2π] at 1° steps unless configured.
    pub fn phi_grid(&self) -> Result<Vec<f64>, CliError> {
        Self::angle_grid(self.phi, TAU, 361)
    }

    pub fn oracle_cases(&self) -> Vec<OracleCase> {
        match &self.oracle_sets {
            None => jcm_core::sweeps::default_oracle_suite(),
            Some(sets) => sets
                .iter()
                .map(|s| OracleCase {
                    label: s.label.clone(),
                    delta: s.delta,
                    n_bar: s.n_bar,
                    gamma: s.gamma,
                    phi: s.phi,
                })
                .collect(),
        }
    }
}
