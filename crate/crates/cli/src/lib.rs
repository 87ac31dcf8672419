//! Batch driver writing detuning scans, isotherm grids, Bloch-sphere exports,
//! time series and oracle reports from a JSON configuration.

pub mod config;
pub mod output;
pub mod run;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{Mode, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] jcm_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("missing level-set input, expected {}: {source}", path.display())]
    MissingInput {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("oracle check failed: {failed} of {total} parameter sets")]
    OracleFailed { failed: usize, total: usize },
}

impl CliError {
    /// 2 for oracle failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::OracleFailed { .. } => 2,
            _ => 1,
        }
    }
}
