//! Experiment runner for special flows and cylindrical cascades: JSON
//! configuration in, `report.json` and CSV traces out.

pub mod config;
pub mod report;
pub mod run;

use ergolab_core::cascades::CascadeError;
use ergolab_core::lemma_tools::LemmaError;
use ergolab_core::zero_lab::ZeroLabError;
use ergolab_core::FlowError;
use thiserror::Error;

pub use config::{validate, ExperimentConfig, Validation};
pub use report::RunReport;
pub use run::{execute, run};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    Invalid(Vec<String>),
    #[error("{0}")]
    Core(String),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<CascadeError> for RunError {
    fn from(e: CascadeError) -> Self {
        RunError::Core(e.to_string())
    }
}

impl From<FlowError> for RunError {
    fn from(e: FlowError) -> Self {
        RunError::Core(e.to_string())
    }
}

impl From<ZeroLabError> for RunError {
    fn from(e: ZeroLabError) -> Self {
        RunError::Core(e.to_string())
    }
}
