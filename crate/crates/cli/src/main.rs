//! `numidx` — numerical-index experiments from JSON run configs.
//!
//! Exit codes: 0 on success, 2 when the run completed but an asserted
//! property failed, 1 on operational errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use numidx_cli::config::TaskKind;
use numidx_cli::run::{exit_code, run_config, Overrides};

#[derive(Parser)]
#[command(
    name = "numidx",
    version,
    about = "Numerical ranges, Lipschitz numerical radii, and index experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's report output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact/sampled numerical radius and operator norm of a matrix.
    Radius(CommonArgs),
    /// Lipschitz bounds and Lipschitz numerical radius of maps.
    LipRadius(CommonArgs),
    /// Relaxed radii v_δ over a δ sweep with shared samples.
    VDelta(CommonArgs),
    /// Randomized upper bound on the space's numerical index.
    Index(CommonArgs),
    /// Gaussian smoothing diagnostics at one scale.
    Smooth(CommonArgs),
    /// Smoothing/derivative extraction with a linearization certificate.
    Extract(CommonArgs),
    /// Følner box-average linearization.
    Folner(CommonArgs),
    /// End-to-end main-inequality verifier.
    Verify(CommonArgs),
    /// CSV cloud of numerical-range samples for external plotting.
    RangeCloud(CommonArgs),
}

impl Command {
    fn split(self) -> (TaskKind, CommonArgs) {
        match self {
            Command::Radius(a) => (TaskKind::Radius, a),
            Command::LipRadius(a) => (TaskKind::LipRadius, a),
            Command::VDelta(a) => (TaskKind::VDelta, a),
            Command::Index(a) => (TaskKind::Index, a),
            Command::Smooth(a) => (TaskKind::Smooth, a),
            Command::Extract(a) => (TaskKind::Extract, a),
            Command::Folner(a) => (TaskKind::Folner, a),
            Command::Verify(a) => (TaskKind::Verify, a),
            Command::RangeCloud(a) => (TaskKind::RangeCloud, a),
        }
    }
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("NUMIDX_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                numidx_core::par::configure_threads(n);
            }
            _ => {
                eprintln!(
                    "warning: NUMIDX_THREADS must be a positive integer, got {raw:?}; ignoring"
                );
            }
        }
    }

    // Usage errors are operational errors (exit 1); the default clap code
    // of 2 is reserved here for property failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (task, args) = cli.command.split();
    let overrides = Overrides {
        task: Some(task),
        seed: args.seed,
        out: args.out,
    };
    let outcome = run_config(&args.config, &overrides);
    match &outcome {
        Ok(report) => {
            match &report.config.output {
                Some(path) => {
                    let verdict = if report.pass { "pass" } else { "FAIL" };
                    println!(
                        "{}: {} checks, {verdict}; report at {}",
                        report.task.name(),
                        report.checks.len(),
                        path.display()
                    );
                }
                None => match serde_json::to_string_pretty(report) {
                    Ok(text) => println!("{text}"),
                    Err(e) => {
                        eprintln!("error: serializing report: {e}");
                        return ExitCode::from(1);
                    }
                },
            }
            for check in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("property failed: {}", check.label);
            }
        }
        Err(err) => {
            if numidx_cli::run::is_property_violation(err) {
                eprintln!("property violated: {err:#}");
            } else {
                eprintln!("error: {err:#}");
            }
        }
    }
    ExitCode::from(exit_code(&outcome))
}
