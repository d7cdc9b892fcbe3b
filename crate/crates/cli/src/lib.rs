//! Library side of the `numidx` command-line laboratory: config parsing,
//! task orchestration, reports, and cloud export. The binary in `main.rs`
//! is a thin argument-parsing shell over [`run::run_config`].

pub mod config;
pub mod report;
pub mod run;

pub use config::{RunConfig, TaskKind};
pub use report::{emit_report, PropertyCheck, RunReport, REPORT_SCHEMA};
pub use run::{export_cloud, run_config, CloudSource, Overrides};
