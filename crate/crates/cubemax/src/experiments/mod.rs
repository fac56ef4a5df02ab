//! Experiment orchestration: configuration, deterministic runners, and
//! report persistence for the CLI.

pub mod config;
pub mod report;
pub mod run;

pub use config::{CapMode, ExperimentConfig, OutputFormat};
pub use report::{Report, ReportResults};
pub use run::RunnerOutput;
