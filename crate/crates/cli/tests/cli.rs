use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

use numidx_cli::config::TaskKind;
use numidx_cli::run::{exit_code, run_config, Overrides};
use numidx_cli::RunReport;

fn write_config(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn run(path: &Path) -> anyhow::Result<RunReport> {
    run_config(path, &Overrides::default())
}

fn numidx() -> Command {
    Command::new(env!("CARGO_BIN_EXE_numidx"))
}

// ---------------------------------------------------------------------------
// Tasks through configs
// ---------------------------------------------------------------------------

#[test]
fn radius_task_reports_the_exact_swap_radius() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "radius.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "radius",
            "seed": 7,
            "matrix": [[0, 1], [1, 0]],
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    let rad = &report.results[0]["num_radius"];
    assert_eq!(rad["value"], json!(1.0));
    assert_eq!(rad["exact"], json!(true));
    assert!(report
        .checks
        .iter()
        .any(|c| c.label == "radius_witness_reproduces" && c.pass));
}

#[test]
fn lip_radius_task_nullifies_conj_swap() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "conj.json",
        &json!({
            "space": {"norm": "l2", "dim": 2, "field": "complex"},
            "task": "lip-radius",
            "seed": 11,
            "maps": ["conj_swap"],
            "budget": {"samples": 400},
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    let wl = report.results[0]["wl"]["value"].as_f64().unwrap();
    assert!(wl <= 1e-10, "wl = {wl}");
    let lip = &report.results[0]["lip"];
    assert!(lip["lower"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert!(lip["upper"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn index_task_vanishes_on_real_hilbert_planes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "index.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "index",
            "seed": 5,
            "budget": {"trials": 500},
        }),
    );
    let report = run(&cfg).unwrap();
    let bound = report.results[0]["upper_bound"].as_f64().unwrap();
    assert!(bound <= 1e-9, "index bound {bound}");
}

#[test]
fn v_delta_task_checks_monotonicity() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "vdelta.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "v-delta",
            "seed": 23,
            "maps": ["kink"],
            "budget": {"samples": 300},
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    assert!(report
        .checks
        .iter()
        .any(|c| c.label == "v_delta_monotone:kink" && c.pass));
    let by_delta = report.results[0]["sweep"]["by_delta"].as_array().unwrap();
    assert_eq!(by_delta.len(), 4);
}

#[test]
fn smooth_task_preserves_the_lip_bound_exactly() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "smooth.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "smooth",
            "seed": 31,
            "maps": ["kink"],
            "scale": 4,
            "budget": {"samples": 256, "probes": 6},
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    assert!(report
        .checks
        .iter()
        .any(|c| c.label == "lip_bound_preserved:kink" && c.pass));
    assert!(report.results[0]["uniform_gap_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn extract_task_certifies_gallery_maps() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "extract.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "extract",
            "seed": 41,
            "maps": ["kink"],
            "budget": {"samples": 300},
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    let cert = &report.results[0]["certificate"];
    assert_eq!(cert["schema"], json!("certificate_v1"));
    assert!(cert["op_norm_t"].as_f64().unwrap() >= 0.9 * cert["lip_lower"].as_f64().unwrap() - 1e-6);
}

#[test]
fn folner_task_reports_recovery_for_known_linear_parts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "folner.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "folner",
            "seed": 43,
            "maps": ["linear_plus_periodic"],
            "r": 5.0,
            "budget": {"probes": 4},
        }),
    );
    let report = run(&cfg).unwrap();
    let res = &report.results[0]["folner"];
    let err = res["recovery_error"].as_f64().unwrap();
    assert!(err <= 0.3 / 5.0 + 2e-2, "recovery error {err}");
    assert!(res["additivity_defect"].as_f64().unwrap().is_finite());
}

#[test]
fn verify_task_passes_on_the_sup_norm_plane() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "verify.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "verify",
            "seed": 47,
            "maps": ["kink", "linear:gauss"],
            "budget": {"trials": 300},
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    assert!(report
        .checks
        .iter()
        .any(|c| c.label == "main_inequality" && c.pass));
    assert_eq!(report.results[0]["all_pass"], json!(true));
}

#[test]
fn inline_expressions_run_like_gallery_maps() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "inline.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "lip-radius",
            "seed": 13,
            "maps": [{"node": "linear", "matrix": [[0.0, 1.0], [0.0, 0.0]]}],
            "budget": {"samples": 300},
        }),
    );
    let report = run(&cfg).unwrap();
    assert_eq!(report.results[0]["map"], json!("inline:linear"));
    let wl = report.results[0]["wl"]["value"].as_f64().unwrap();
    assert!((wl - 0.5).abs() <= 5e-2, "wl = {wl}");
}

// ---------------------------------------------------------------------------
// Range clouds
// ---------------------------------------------------------------------------

#[test]
fn identity_cloud_rows_are_exactly_one() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("id.csv");
    let cfg = write_config(
        dir.path(),
        "cloud.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "range-cloud",
            "seed": 3,
            "matrix": [[1, 0], [0, 1]],
            "budget": {"samples": 100},
            "csv": csv,
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im");
    assert_eq!(lines.len(), 101);
    assert!(lines[1..].iter().all(|l| *l == "1,0"), "rows: {:?}", &lines[1..4]);
}

#[test]
fn complex_shift_cloud_stays_inside_the_exact_radius() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("shift.csv");
    let cfg = write_config(
        dir.path(),
        "cloud.json",
        &json!({
            "space": {"norm": "l2", "dim": 2, "field": "complex"},
            "task": "range-cloud",
            "seed": 17,
            "matrix": [[0, 1], [0, 0]],
            "budget": {"samples": 200},
            "csv": csv,
        }),
    );
    let report = run(&cfg).unwrap();
    assert!(report.pass, "cloud_inside_radius must hold");
    let text = fs::read_to_string(&csv).unwrap();
    for line in text.lines().skip(1) {
        let (re, im) = line.split_once(',').unwrap();
        let re: f64 = re.parse().unwrap();
        let im: f64 = im.parse().unwrap();
        assert!((re * re + im * im).sqrt() <= 0.5 + 1e-9, "point {line}");
    }
}

#[test]
fn conj_swap_cloud_quotients_vanish() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("conj.csv");
    let cfg = write_config(
        dir.path(),
        "cloud.json",
        &json!({
            "space": {"norm": "l2", "dim": 2, "field": "complex"},
            "task": "range-cloud",
            "seed": 19,
            "maps": ["conj_swap"],
            "budget": {"samples": 150},
            "csv": csv,
        }),
    );
    run(&cfg).unwrap();
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "quotient");
    assert_eq!(lines.len(), 151);
    for line in &lines[1..] {
        let q: f64 = line.parse().unwrap();
        assert!(q.abs() <= 1e-10, "quotient {q}");
    }
}

// ---------------------------------------------------------------------------
// Reports, ledger, overrides, diagnostics
// ---------------------------------------------------------------------------

#[test]
fn reports_round_trip_and_the_ledger_grows_one_line_per_run() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let cfg = write_config(
        dir.path(),
        "radius.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "radius",
            "seed": 7,
            "matrix": [[0, 1], [1, 0]],
            "output": out,
        }),
    );
    let first = run(&cfg).unwrap();
    let parsed: RunReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(parsed.numeric_payload().unwrap(), first.numeric_payload().unwrap());

    let second = run(&cfg).unwrap();
    assert_eq!(
        first.numeric_payload().unwrap(),
        second.numeric_payload().unwrap(),
        "same config must reproduce the same numbers"
    );

    let ledger = fs::read_to_string(dir.path().join("results.jsonl")).unwrap();
    assert_eq!(ledger.lines().count(), 2);
    for line in ledger.lines() {
        let entry: Value = serde_json::from_str(line).unwrap();
        assert_eq!(entry["task"], json!("radius"));
        assert_eq!(entry["pass"], json!(true));
    }
}

#[test]
fn overrides_replace_task_seed_and_output() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.json");
    let cfg = write_config(
        dir.path(),
        "base.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "radius",
            "seed": 1,
            "matrix": [[0, 1], [0, 0]],
            "maps": ["kink"],
            "budget": {"samples": 200},
        }),
    );
    let report = run_config(
        &cfg,
        &Overrides {
            task: Some(TaskKind::LipRadius),
            seed: Some(99),
            out: Some(out.clone()),
        },
    )
    .unwrap();
    assert_eq!(report.task, TaskKind::LipRadius);
    assert_eq!(report.config.seed, 99);
    assert_eq!(report.config.output.as_deref(), Some(out.as_path()));
    assert!(out.exists());
}

#[test]
fn native_maps_and_bad_configs_are_rejected_with_diagnostics() {
    let dir = TempDir::new().unwrap();

    let native = write_config(
        dir.path(),
        "native.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "lip-radius",
            "seed": 1,
            "maps": [{"node": "native"}],
        }),
    );
    let err = run(&native).unwrap_err().to_string();
    assert!(err.contains("native"), "unhelpful error: {err}");

    let unknown_map = write_config(
        dir.path(),
        "unknown.json",
        &json!({
            "space": {"norm": "l2", "dim": 2},
            "task": "lip-radius",
            "seed": 1,
            "maps": ["no_such_map"],
        }),
    );
    let err = format!("{:#}", run(&unknown_map).unwrap_err());
    assert!(err.contains("no_such_map"), "unhelpful error: {err}");

    let extra_field = dir.path().join("extra.json");
    fs::write(
        &extra_field,
        r#"{"space": {"norm": "l2", "dim": 2}, "task": "index", "seed": 1, "budgets": {}}"#,
    )
    .unwrap();
    let err = format!("{:#}", run(&extra_field).unwrap_err());
    assert!(err.contains("budgets"), "diagnostic should name the field: {err}");

    let no_seed = dir.path().join("noseed.json");
    fs::write(
        &no_seed,
        r#"{"space": {"norm": "l2", "dim": 2}, "task": "index"}"#,
    )
    .unwrap();
    let err = format!("{:#}", run(&no_seed).unwrap_err());
    assert!(err.contains("seed"), "diagnostic should mention the seed: {err}");

    let no_task = write_config(
        dir.path(),
        "notask.json",
        &json!({"space": {"norm": "l2", "dim": 2}, "seed": 1}),
    );
    let err = run(&no_task).unwrap_err().to_string();
    assert!(err.contains("task"), "diagnostic should mention the task: {err}");
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    let ok: anyhow::Result<RunReport> = Err(anyhow::anyhow!("io trouble"));
    assert_eq!(exit_code(&ok), 1);
    let prop: anyhow::Result<RunReport> = Err(anyhow::Error::new(
        numidx_core::Error::PropertyViolation("w exceeded its bound".into()),
    ));
    assert_eq!(exit_code(&prop), 2);
}

// ---------------------------------------------------------------------------
// The installed binary
// ---------------------------------------------------------------------------

#[test]
fn binary_runs_a_config_and_honors_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let cfg = write_config(
        dir.path(),
        "radius.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "radius",
            "seed": 7,
            "matrix": [[0, 1], [1, 0]],
        }),
    );
    let ok = numidx()
        .args(["radius", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(ok.status.success(), "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    assert!(out.exists());

    let missing = numidx()
        .args(["radius", "--config", "/definitely/not/here.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));

    let no_args = numidx().output().unwrap();
    assert_eq!(no_args.status.code(), Some(1), "usage errors are operational");

    let help = numidx().arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn binary_reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "vdelta.json",
        &json!({
            "space": {"norm": "linf", "dim": 2},
            "task": "v-delta",
            "seed": 71,
            "maps": ["kink"],
            "budget": {"samples": 200},
        }),
    );
    // One output path for every run: the config (including the echoed
    // output field) must be identical for the byte-identity contract.
    let out = dir.path().join("report.json");
    let mut payloads = Vec::new();
    for threads in ["1", "4", "1", "4"] {
        let status = numidx()
            .args(["v-delta", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .env("NUMIDX_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        let report: RunReport =
            serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        payloads.push(report.numeric_payload().unwrap());
    }
    assert_eq!(payloads[0], payloads[1], "1 vs 4 threads");
    assert_eq!(payloads[0], payloads[2], "rerun with 1 thread");
    assert_eq!(payloads[0], payloads[3], "rerun with 4 threads");
}
