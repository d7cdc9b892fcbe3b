//! Run configuration: JSON on disk, validated library inputs in memory.
//!
//! A config names a space, a task, the maps or matrix the task operates on,
//! the sampling budgets, and — mandatorily — the seed. Everything a run
//! needs to be reproduced is in this one file; command-line flags may
//! override the task, seed, and output path.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use numidx_core::config::Tolerances;
use numidx_core::lipmap::gallery;
use numidx_core::scalar::ScalarRepr;
use numidx_core::{Field, LipschitzExpr, Matrix, Scalar, SpaceSpec};

/// The experiment a run performs; doubles as the CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Radius,
    LipRadius,
    VDelta,
    Index,
    Smooth,
    Extract,
    Folner,
    Verify,
    RangeCloud,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Radius => "radius",
            TaskKind::LipRadius => "lip-radius",
            TaskKind::VDelta => "v-delta",
            TaskKind::Index => "index",
            TaskKind::Smooth => "smooth",
            TaskKind::Extract => "extract",
            TaskKind::Folner => "folner",
            TaskKind::Verify => "verify",
            TaskKind::RangeCloud => "range-cloud",
        }
    }
}

/// Scalar field of the configured space.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldConfig {
    #[default]
    Real,
    Complex,
}

impl From<FieldConfig> for Field {
    fn from(f: FieldConfig) -> Field {
        match f {
            FieldConfig::Real => Field::Real,
            FieldConfig::Complex => Field::Complex,
        }
    }
}

/// Wire form of a space. Validation (exponent range, generator symmetry,
/// dimension guards) happens in the library constructors, so a config can
/// only ever describe spaces the library accepts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "norm", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceConfig {
    L1 {
        dim: usize,
        #[serde(default)]
        field: FieldConfig,
    },
    L2 {
        dim: usize,
        #[serde(default)]
        field: FieldConfig,
    },
    Linf {
        dim: usize,
        #[serde(default)]
        field: FieldConfig,
    },
    Lp {
        dim: usize,
        p: f64,
        #[serde(default)]
        field: FieldConfig,
    },
    /// Real polyhedral norm given by an explicitly symmetric generator list.
    Polyhedral { dim: usize, generators: Vec<Vec<f64>> },
}

impl SpaceConfig {
    pub fn to_space(&self) -> anyhow::Result<SpaceSpec> {
        let space = match self.clone() {
            SpaceConfig::L1 { dim, field } => SpaceSpec::lp(dim, 1.0, field.into())?,
            SpaceConfig::L2 { dim, field } => SpaceSpec::lp(dim, 2.0, field.into())?,
            SpaceConfig::Linf { dim, field } => SpaceSpec::lp(dim, f64::INFINITY, field.into())?,
            SpaceConfig::Lp { dim, p, field } => SpaceSpec::lp(dim, p, field.into())?,
            SpaceConfig::Polyhedral { dim, generators } => SpaceSpec::polyhedral(dim, generators)?,
        };
        Ok(space)
    }
}

/// A map entry: a gallery name, or an inline expression in the library's
/// JSON grammar. Native (closure-backed) maps cannot appear in a config —
/// they are not serializable, so a run configured with one could never be
/// reproduced from its file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapConfig {
    Gallery(String),
    Inline(serde_json::Value),
}

impl MapConfig {
    /// Gallery name, when this entry is one.
    pub fn gallery_name(&self) -> Option<&str> {
        match self {
            MapConfig::Gallery(name) => Some(name),
            MapConfig::Inline(_) => None,
        }
    }

    /// Build the expression and a label for report entries.
    pub fn resolve(&self, space: &SpaceSpec) -> anyhow::Result<(String, LipschitzExpr)> {
        match self {
            MapConfig::Gallery(name) => {
                let f = gallery(name, space)
                    .with_context(|| format!("building gallery map {name:?}"))?;
                Ok((name.clone(), f))
            }
            MapConfig::Inline(value) => {
                if value.get("node").and_then(|n| n.as_str()) == Some("native") {
                    bail!(
                        "native maps cannot be configured: they wrap process-local \
                         closures and are not reproducible from a file; use a gallery \
                         name or the expression grammar instead"
                    );
                }
                let f: LipschitzExpr = serde_json::from_value(value.clone())
                    .context("parsing inline map expression")?;
                let label = value
                    .get("node")
                    .and_then(|n| n.as_str())
                    .map_or_else(|| "inline".to_string(), |n| format!("inline:{n}"));
                Ok((label, f))
            }
        }
    }
}

fn default_samples() -> usize {
    1000
}
fn default_trials() -> usize {
    1000
}
fn default_probes() -> usize {
    8
}

/// Sampling budgets. `samples` feeds pair-sampling estimators and measure
/// draws, `trials` feeds the operator search, `probes` feeds additivity and
/// gap probing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_probes")]
    pub probes: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            samples: default_samples(),
            trials: default_trials(),
            probes: default_probes(),
        }
    }
}

/// Partial overrides of the library's search tolerances; absent fields keep
/// their defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent_iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent_shrink: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent_min_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_descent_iters: Option<usize>,
}

impl ToleranceOverrides {
    pub fn apply(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(v) = self.ascent_fraction {
            t.ascent_fraction = v;
        }
        if let Some(v) = self.ascent_iters {
            t.ascent_iters = v;
        }
        if let Some(v) = self.ascent_step {
            t.ascent_step = v;
        }
        if let Some(v) = self.ascent_shrink {
            t.ascent_shrink = v;
        }
        if let Some(v) = self.ascent_min_step {
            t.ascent_min_step = v;
        }
        if let Some(v) = self.index_descent_iters {
            t.index_descent_iters = v;
        }
        t
    }
}

/// One experiment: space, task, inputs, budgets, seed, output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceConfig,
    /// May be omitted when the task comes from the CLI subcommand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskKind>,
    /// Mandatory: every run is reproducible from its config alone.
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapConfig>,
    #[serde(default)]
    pub budget: BudgetConfig,
    #[serde(default, skip_serializing_if = "is_default_tols")]
    pub tolerances: ToleranceOverrides,
    /// Report destination; stdout when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Cloud CSV destination for `range-cloud` (default `cloud.csv`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    /// Operator entries for `radius` and linear `range-cloud`: plain numbers
    /// or `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<ScalarRepr>>>,
    /// Relaxation levels for `v-delta` (default `[0.3, 0.1, 0.03, 0.01]`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    /// Stretch tolerance for `extract` (default `0.1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Smoothing scale `n` for `smooth` (default `1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u32>,
    /// Box half-width `R` for `folner` (default `10`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

fn is_default_tols(t: &ToleranceOverrides) -> bool {
    *t == ToleranceOverrides::default()
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<RunConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        Ok(cfg)
    }

    /// The configured matrix as a library matrix on `space`, with dimension
    /// and field checks.
    pub fn matrix_on(&self, space: &SpaceSpec) -> anyhow::Result<Matrix> {
        let rows = self
            .matrix
            .as_ref()
            .context("this task needs a `matrix` entry in the config")?;
        let d = space.dim();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            bail!(
                "matrix must be {d}×{d} to act on the configured space, got {} rows",
                rows.len()
            );
        }
        let entries: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|s| Scalar::from(*s)).collect())
            .collect();
        if space.is_real() && entries.iter().flatten().any(|z| z.im != 0.0) {
            bail!("matrix entries must be real on a real space");
        }
        Ok(Matrix::from_fn(d, |i, j| entries[i][j]))
    }
}
