//! Run reports: one JSON document per run, plus a JSONL ledger for batches.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{RunConfig, TaskKind};

pub const REPORT_SCHEMA: &str = "report_v1";

/// One asserted property and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub label: String,
    pub pass: bool,
}

impl PropertyCheck {
    pub fn new(label: impl Into<String>, pass: bool) -> Self {
        PropertyCheck {
            label: label.into(),
            pass,
        }
    }
}

/// Everything a run produced. All numeric fields are deterministic
/// functions of the config; only `wall_time_ms` varies between reruns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    pub task: TaskKind,
    /// The effective config (after CLI overrides), echoed verbatim.
    pub config: RunConfig,
    /// Task-specific payloads, one per input (map, matrix, or space).
    pub results: Vec<serde_json::Value>,
    pub checks: Vec<PropertyCheck>,
    /// Conjunction of `checks`; drives the process exit code.
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl RunReport {
    /// The deterministic part of the report: everything except the wall
    /// time. Byte-equality of this string is the reproducibility contract.
    pub fn numeric_payload(&self) -> anyhow::Result<String> {
        let mut v = serde_json::to_value(self)?;
        v.as_object_mut()
            .expect("reports serialize as objects")
            .remove("wall_time_ms");
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

/// Write the pretty report to `path` and append a one-line summary to a
/// `results.jsonl` ledger in the same directory.
pub fn emit_report(report: &RunReport, path: &Path) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let pretty = serde_json::to_string_pretty(report)?;
    fs::write(path, pretty + "\n").with_context(|| format!("writing {}", path.display()))?;

    let ledger = ledger_path(path);
    let line = serde_json::to_string(&json!({
        "task": report.task,
        "seed": report.config.seed,
        "pass": report.pass,
        "output": path,
        "wall_time_ms": report.wall_time_ms,
    }))?;
    let mut fh = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&ledger)
        .with_context(|| format!("opening ledger {}", ledger.display()))?;
    writeln!(fh, "{line}")?;
    Ok(())
}

/// The batch ledger lives next to the report it summarizes.
pub fn ledger_path(report_path: &Path) -> PathBuf {
    report_path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .map_or_else(|| PathBuf::from("results.jsonl"), |d| d.join("results.jsonl"))
}
