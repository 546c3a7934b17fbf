//! The `qlms-sparse` command: config file in, CSV learning curves and a
//! short summary out.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Parser;

use crate::config::parse_config;
use crate::error::Error;
use crate::experiment::{run_scenario, LearningCurve, ScenarioConfig};
use crate::output::emit_csv;

/// Fraction of the curve averaged for the steady-state level.
pub const SUMMARY_TAIL_FRACTION: f64 = 0.1;
/// Convergence is reported at steady state plus this many dB.
pub const SUMMARY_MARGIN_DB: f64 = 3.0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Monte-Carlo QLMS / ZA-QLMS sparse system identification.
#[derive(Debug, Clone, Parser)]
#[command(name = "qlms-sparse", version, about)]
pub struct CliArgs {
    /// Scenario config file.
    #[arg(long)]
    pub config: PathBuf,
    /// Destination of the learning-curve CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the config's number of Monte-Carlo runs.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Do not print the summary.
    #[arg(long)]
    pub quiet: bool,
}

/// Per-algorithm figures printed after a run.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSummary {
    pub label: &'static str,
    pub steady_state_db: f64,
    pub convergence_iteration: Option<usize>,
}

pub fn summarize(curves: &[LearningCurve]) -> Result<Vec<CurveSummary>, Error> {
    curves
        .iter()
        .map(|c| {
            let ss = c.steady_state_db(SUMMARY_TAIL_FRACTION)?;
            Ok(CurveSummary {
                label: c.algorithm.label(),
                steady_state_db: ss,
                convergence_iteration: c.convergence_iteration(ss + SUMMARY_MARGIN_DB),
            })
        })
        .collect()
}

pub fn format_summary(rows: &[CurveSummary]) -> String {
    let mut out = String::new();
    for r in rows {
        let conv = r
            .convergence_iteration
            .map_or_else(|| "never".to_string(), |n| n.to_string());
        writeln!(
            out,
            "{:<8} steady state {:>9.3} dB   converged at iteration {}",
            r.label, r.steady_state_db, conv
        )
        .unwrap();
    }
    out
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config { .. } | Error::InvalidParameter { .. } | Error::ParseQuaternion { .. } => EXIT_CONFIG,
        Error::Diverged { .. } | Error::NonFiniteWeights { .. } => EXIT_DIVERGED,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_OTHER,
    }
}

/// Loads the config and applies command-line overrides.
pub fn load_config(args: &CliArgs) -> Result<ScenarioConfig, Error> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Error::Config {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", args.config.display()),
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(runs) = args.runs {
        cfg.num_runs = runs;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Config → experiment → CSV. Nothing is written if any step fails.
pub fn run(args: &CliArgs) -> Result<Vec<CurveSummary>, Error> {
    let cfg = load_config(args)?;
    let curves = run_scenario(&cfg)?;
    let summary = summarize(&curves)?;
    emit_csv(&curves, &args.out)?;
    Ok(summary)
}

/// Parses `argv`, runs, prints, and returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match CliArgs::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&args) {
        Ok(summary) => {
            if !args.quiet {
                print!("{}", format_summary(&summary));
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("qlms-sparse: {e}");
            exit_code(&e)
        }
    }
}
