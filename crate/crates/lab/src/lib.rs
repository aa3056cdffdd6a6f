//! Experiment runner for the Navier-Stokes–Korteweg laboratory: configuration,
//! orchestration, persisted outputs, and reports.

pub mod config;
pub mod error;
pub mod experiment;
pub mod ini;
pub mod inspect;
pub mod report;
pub mod sweep;

pub use config::{parse_config, AuditKind, ExperimentConfig};
pub use error::{ConfigError, LabError};
pub use experiment::{run_experiment, run_experiment_in, AuditRow, RunManifest, RunStatus};
pub use report::report;
pub use sweep::sweep;
