//! Scenario runner for covering-radius experiments.
//!
//! A scenario is described by an [`ExperimentConfig`] JSON file; running it
//! yields an [`ExperimentReport`] with every computed bracket and witness and a
//! pass flag per acceptance threshold.

pub mod config;
pub mod report;
pub mod scenario;

pub use config::{ExperimentConfig, Scenario};
pub use report::{Assertion, ExperimentReport, SummaryRow};
pub use scenario::execute;

/// Failures the CLI distinguishes by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] thickness_core::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}
