//! Task orchestration: a config in, a deterministic report out.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use serde_json::json;

use numidx_core::config as core_config;
use numidx_core::extract::{extract_operator, folner_linearize, verify_main_inequality};
use numidx_core::linop::{num_radius, numrange_cloud, op_norm};
use numidx_core::lipmap::{delta_sweep, gallery_truth, lip_bounds, wl_lower};
use numidx_core::rng::Stream;
use numidx_core::smooth::{gaussian_draw, smooth_map, uniform_gap_bound, GaussianSpec};
use numidx_core::space::pair;
use numidx_core::{LipschitzExpr, SpaceSpec};

use crate::config::{RunConfig, TaskKind};
use crate::report::{emit_report, PropertyCheck, RunReport, REPORT_SCHEMA};

/// Command-line overrides; each one replaces its config field before the
/// run, so the echoed config is the effective one.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub task: Option<TaskKind>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Load a config, apply `overrides`, execute the task, and emit the report
/// to the configured output (when one is set). The returned report carries
/// every numeric result plus property-check outcomes.
pub fn run_config(path: &Path, overrides: &Overrides) -> anyhow::Result<RunReport> {
    let mut cfg = RunConfig::load(path)?;
    if let Some(t) = overrides.task {
        cfg.task = Some(t);
    }
    if let Some(s) = overrides.seed {
        cfg.seed = s;
    }
    if let Some(o) = &overrides.out {
        cfg.output = Some(o.clone());
    }
    let task = cfg
        .task
        .context("no task selected: set `task` in the config or use a subcommand")?;

    let started = Instant::now();
    let (results, checks) = execute(&cfg, task)?;
    let pass = checks.iter().all(|c| c.pass);
    let report = RunReport {
        schema: REPORT_SCHEMA.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        task,
        config: cfg,
        results,
        checks,
        pass,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    if let Some(out) = report.config.output.clone() {
        emit_report(&report, &out)?;
    }
    Ok(report)
}

/// Exit code for a finished run: 0 on success, 2 when the run completed but
/// a property failed (a failed check, or a property-violation error from a
/// re-checked invariant), 1 on any other error.
pub fn exit_code(outcome: &anyhow::Result<RunReport>) -> u8 {
    match outcome {
        Ok(report) if report.pass => 0,
        Ok(_) => 2,
        Err(err) if is_property_violation(err) => 2,
        Err(_) => 1,
    }
}

/// Whether an error chain bottoms out in a library property violation.
pub fn is_property_violation(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<numidx_core::Error>(),
            Some(numidx_core::Error::PropertyViolation(_))
        )
    })
}

type TaskOutput = (Vec<serde_json::Value>, Vec<PropertyCheck>);

fn execute(cfg: &RunConfig, task: TaskKind) -> anyhow::Result<TaskOutput> {
    let space = cfg.space.to_space()?;
    let stream = Stream::new(cfg.seed);
    match task {
        TaskKind::Radius => radius_task(cfg, &space),
        TaskKind::LipRadius => lip_radius_task(cfg, &space, stream),
        TaskKind::VDelta => v_delta_task(cfg, &space, stream),
        TaskKind::Index => index_task(cfg, &space, stream),
        TaskKind::Smooth => smooth_task(cfg, &space, stream),
        TaskKind::Extract => extract_task(cfg, &space, stream),
        TaskKind::Folner => folner_task(cfg, &space, stream),
        TaskKind::Verify => verify_task(cfg, &space, stream),
        TaskKind::RangeCloud => range_cloud_task(cfg, &space, stream),
    }
}

fn resolved_maps(
    cfg: &RunConfig,
    space: &SpaceSpec,
    task: TaskKind,
) -> anyhow::Result<Vec<(String, LipschitzExpr)>> {
    if cfg.maps.is_empty() {
        bail!("task {} needs at least one `maps` entry", task.name());
    }
    cfg.maps.iter().map(|m| m.resolve(space)).collect()
}

// ---------------------------------------------------------------------------
// Individual tasks
// ---------------------------------------------------------------------------

fn radius_task(cfg: &RunConfig, space: &SpaceSpec) -> anyhow::Result<TaskOutput> {
    let m = cfg.matrix_on(space)?;
    let rad = num_radius(space, &m);
    let norm = op_norm(space, &m);
    let mut checks = Vec::new();
    if let Some(w) = &rad.witness {
        let recomputed = pair(&w.f, &m.mul_vec(&w.x)).norm();
        checks.push(PropertyCheck::new(
            "radius_witness_reproduces",
            (recomputed - rad.value).abs() <= core_config::WITNESS_REPRODUCE_TOL,
        ));
    }
    let results = vec![json!({
        "matrix": m,
        "num_radius": rad,
        "op_norm": norm,
    })];
    Ok((results, checks))
}

fn lip_radius_task(
    cfg: &RunConfig,
    space: &SpaceSpec,
    stream: Stream,
) -> anyhow::Result<TaskOutput> {
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (name, f) in resolved_maps(cfg, space, TaskKind::LipRadius)? {
        let lb = lip_bounds(
            &f,
            space,
            cfg.budget.samples,
            stream.child_named(&format!("lip:{name}")),
        )?;
        let wl = wl_lower(
            &f,
            space,
            cfg.budget.samples,
            stream.child_named(&format!("wl:{name}")),
            None,
        )?;
        if let Some(w) = &wl.witness {
            checks.push(PropertyCheck::new(
                format!("wl_witness_verifies:{name}"),
                w.verify(space, &f, None).is_ok(),
            ));
        }
        results.push(json!({ "map": name, "lip": lb, "wl": wl }));
    }
    Ok((results, checks))
}

fn v_delta_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    let deltas = cfg
        .deltas
        .clone()
        .unwrap_or_else(|| vec![0.3, 0.1, 0.03, 0.01]);
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (name, f) in resolved_maps(cfg, space, TaskKind::VDelta)? {
        let sweep = delta_sweep(
            &f,
            space,
            &deltas,
            cfg.budget.samples,
            stream.child_named(&format!("vdelta:{name}")),
        )?;
        // v_δ shrinks with δ: check over the sweep ordered by decreasing δ.
        let mut ordered: Vec<&(f64, _)> = sweep.by_delta.iter().collect();
        ordered.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("deltas are finite"));
        let monotone = ordered
            .windows(2)
            .all(|w| w[1].1.value <= w[0].1.value + 1e-3);
        checks.push(PropertyCheck::new(format!("v_delta_monotone:{name}"), monotone));
        results.push(json!({ "map": name, "sweep": sweep }));
    }
    Ok((results, checks))
}

fn index_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    let est = numidx_core::linop::index_upper_search(
        space,
        cfg.budget.trials,
        stream.child_named("index"),
        &cfg.tolerances.apply(),
    );
    Ok((vec![json!(est)], Vec::new()))
}

fn smooth_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    let scale = cfg.scale.unwrap_or(1);
    let spec = GaussianSpec::identity(space.dim())?;
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (name, f) in resolved_maps(cfg, space, TaskKind::Smooth)? {
        let measure = gaussian_draw(
            &spec,
            cfg.budget.samples,
            stream.child_named(&format!("measure:{name}")),
        )?
        .with_scale(scale)?;
        let f_n = smooth_map(&f, &measure)?;
        let lip_f = lip_bounds(
            &f,
            space,
            cfg.budget.samples,
            stream.child_named(&format!("lipf:{name}")),
        )?;
        let lip_n = lip_bounds(
            &f_n,
            space,
            cfg.budget.samples,
            stream.child_named(&format!("lipn:{name}")),
        )?;
        let gap = uniform_gap_bound(
            &f,
            &f_n,
            space,
            cfg.budget.probes,
            stream.child_named(&format!("gap:{name}")),
        )?;
        // Smoothing must preserve the compositional bound exactly — same
        // float, not merely close.
        checks.push(PropertyCheck::new(
            format!("lip_bound_preserved:{name}"),
            lip_n.upper == lip_f.upper,
        ));
        results.push(json!({
            "map": name,
            "scale": scale,
            "lip": lip_f,
            "lip_smoothed": lip_n,
            "uniform_gap_bound": gap,
        }));
    }
    Ok((results, checks))
}

fn extract_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    let eps = cfg.eps.unwrap_or(0.1);
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (name, f) in resolved_maps(cfg, space, TaskKind::Extract)? {
        let cert = extract_operator(
            &f,
            space,
            eps,
            cfg.budget.samples,
            stream.child_named(&format!("extract:{name}")),
        )?;
        // The constructor re-checks the certificate invariants; reaching
        // this point means they held.
        checks.push(PropertyCheck::new(
            format!("certificate_invariants:{name}"),
            true,
        ));
        results.push(json!({ "map": name, "certificate": cert }));
    }
    Ok((results, checks))
}

fn folner_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    let r = cfg.r.unwrap_or(10.0);
    let mut results = Vec::new();
    for (name, f) in resolved_maps(cfg, space, TaskKind::Folner)? {
        // Known linear parts come from the gallery; inline labels miss and
        // simply skip the recovery-error column.
        let truth = gallery_truth(&name, space);
        let res = folner_linearize(
            &f,
            space,
            r,
            cfg.budget.probes,
            stream.child_named(&format!("folner:{name}")),
            truth.as_ref(),
        )?;
        results.push(json!({ "map": name, "folner": res }));
    }
    Ok((results, Vec::new()))
}

fn verify_task(cfg: &RunConfig, space: &SpaceSpec, stream: Stream) -> anyhow::Result<TaskOutput> {
    if cfg.maps.is_empty() {
        bail!("task verify needs at least one `maps` entry");
    }
    let names: Vec<&str> = cfg
        .maps
        .iter()
        .map(|m| {
            m.gallery_name()
                .context("verify runs against gallery maps only (names, not inline expressions)")
        })
        .collect::<anyhow::Result<_>>()?;
    let report = verify_main_inequality(
        space,
        &names,
        cfg.budget.trials,
        stream.child_named("verify"),
    )?;
    let mut checks = vec![PropertyCheck::new("main_inequality", report.all_pass)];
    for entry in &report.entries {
        checks.push(PropertyCheck::new(
            format!("map_passes_or_expected:{}", entry.name),
            entry.pass || entry.expected_violation,
        ));
    }
    Ok((vec![json!(report)], checks))
}

// ---------------------------------------------------------------------------
// Range clouds
// ---------------------------------------------------------------------------

/// Sample numerical-range data to CSV: `re,im` rows for a linear operator's
/// range, or `quotient` rows for a Lipschitz map (signed pairing per unit
/// separation on real spaces, modulus on complex ones).
pub fn export_cloud(
    space: &SpaceSpec,
    source: &CloudSource,
    budget: usize,
    seed: u64,
    path: &Path,
) -> anyhow::Result<CloudSummary> {
    if budget == 0 {
        bail!("range-cloud needs a positive sample budget");
    }
    let stream = Stream::new(seed).child_named("cloud");
    let mut csv = String::new();
    let summary = match source {
        CloudSource::Linear(m) => {
            let points = numrange_cloud(space, m, budget, stream);
            csv.push_str("re,im\n");
            let mut max_abs: f64 = 0.0;
            for z in &points {
                max_abs = max_abs.max(z.norm());
                csv.push_str(&format!("{},{}\n", z.re, z.im));
            }
            let rad = num_radius(space, m);
            CloudSummary {
                kind: "linear",
                rows: points.len(),
                max_abs,
                radius: Some(rad.value),
                radius_exact: rad.exact,
            }
        }
        CloudSource::Lipschitz(f) => {
            let quotients = lipschitz_cloud(space, f, budget, stream)?;
            csv.push_str("quotient\n");
            let mut max_abs: f64 = 0.0;
            for q in &quotients {
                max_abs = max_abs.max(q.abs());
                csv.push_str(&format!("{q}\n"));
            }
            CloudSummary {
                kind: "lipschitz",
                rows: quotients.len(),
                max_abs,
                radius: None,
                radius_exact: false,
            }
        }
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    Ok(summary)
}

/// What a cloud samples from.
pub enum CloudSource {
    Linear(numidx_core::Matrix),
    Lipschitz(LipschitzExpr),
}

#[derive(Debug, Clone, Copy)]
pub struct CloudSummary {
    pub kind: &'static str,
    pub rows: usize,
    pub max_abs: f64,
    pub radius: Option<f64>,
    pub radius_exact: bool,
}

/// Samples of the Lipschitz numerical range: for random pairs, the pairing
/// of the difference quotient against a functional norming the difference.
fn lipschitz_cloud(
    space: &SpaceSpec,
    f: &LipschitzExpr,
    budget: usize,
    stream: Stream,
) -> anyhow::Result<Vec<f64>> {
    let real = space.is_real();
    let rows = numidx_core::par::map_indexed(budget, |i| -> numidx_core::Result<f64> {
        use rand::Rng;
        let mut rng = stream.child(i as u64).rng();
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let radius: f64 = 2.0 * rng.random::<f64>();
            space.sphere_sample(rng).scale_re(radius)
        };
        let x1 = draw(&mut rng);
        let mut x2 = draw(&mut rng);
        let mut sep = space.norm(&x1.sub(&x2));
        let mut tries = 0;
        while sep < 1e-9 && tries < 16 {
            x2 = draw(&mut rng);
            sep = space.norm(&x1.sub(&x2));
            tries += 1;
        }
        if sep < 1e-9 {
            return Err(numidx_core::Error::SearchFailure(
                "could not draw a separated pair".into(),
            ));
        }
        let u = x1.sub(&x2).scale_re(1.0 / sep);
        let face = space.support_face(&u)?;
        let dv = f.diff(&x1, &x2)?;
        let q = face
            .extreme_points
            .iter()
            .map(|fl| pair(fl, &dv))
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite pairings"))
            .expect("support faces are nonempty");
        Ok(if real { q.re / sep } else { q.norm() / sep })
    });
    let mut out = Vec::with_capacity(budget);
    for r in rows {
        out.push(r?);
    }
    Ok(out)
}

fn range_cloud_task(
    cfg: &RunConfig,
    space: &SpaceSpec,
    _stream: Stream,
) -> anyhow::Result<TaskOutput> {
    let source = if cfg.matrix.is_some() {
        CloudSource::Linear(cfg.matrix_on(space)?)
    } else {
        let maps = resolved_maps(cfg, space, TaskKind::RangeCloud)?;
        if maps.len() != 1 {
            bail!("range-cloud samples one source: give a `matrix` or exactly one map");
        }
        let (_, f) = maps.into_iter().next().expect("checked length");
        match f.as_linear() {
            Some(m) => CloudSource::Linear(m.clone()),
            None => CloudSource::Lipschitz(f),
        }
    };
    let csv_path = cfg.csv.clone().unwrap_or_else(|| PathBuf::from("cloud.csv"));
    let summary = export_cloud(space, &source, cfg.budget.samples, cfg.seed, &csv_path)?;
    let mut checks = Vec::new();
    if let (Some(radius), true) = (summary.radius, summary.radius_exact) {
        // Sound only against the exact oracle: sampled range values can
        // never exceed the true radius.
        checks.push(PropertyCheck::new(
            "cloud_inside_radius",
            summary.max_abs <= radius + 1e-9,
        ));
    }
    let results = vec![json!({
        "csv": csv_path,
        "kind": summary.kind,
        "rows": summary.rows,
        "max_abs": summary.max_abs,
        "radius": summary.radius,
    })];
    Ok((results, checks))
}
