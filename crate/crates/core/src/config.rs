//! Line-oriented scenario files.
//!
//! ```text
//! # comments start with '#'
//! length         = 32
//! active_taps    = 1, 7, 15, 30      # 0-based
//! tap_values     = 1+0i+0j+0k, 0+1i+0j+0k, ...   # optional
//! mu             = 3e-7
//! rho            = 5e-7
//! snr_db         = 30                # or inf for noiseless
//! num_iterations = 20000
//! num_runs       = 100
//! seed           = 1
//! coloring_len   = 5                 # optional, default 5
//! coloring       = quaternion        # optional: quaternion | real
//! input_power    = 1                 # optional, default 1
//! algorithms     = qlms, za_qlms     # optional, default both
//! ```
//!
//! Every key may appear once. Unknown keys and malformed values are
//! reported with their line and column; invariant violations name the
//! offending field.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::experiment::{Algorithm, ColoringKind, ScenarioConfig};
use crate::quaternion::Quaternion;

const REQUIRED: [&str; 8] = [
    "length",
    "active_taps",
    "mu",
    "rho",
    "snr_db",
    "num_iterations",
    "num_runs",
    "seed",
];

fn config_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a comma-separated list, yielding each item with its 1-based
/// column in the original line.
fn list_items(value: &str, value_col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in value.split(',') {
        let lead = raw.len() - raw.trim_start().len();
        out.push((raw.trim(), value_col + offset + lead));
        offset += raw.len() + 1;
    }
    out
}

fn parse_value<T: std::str::FromStr>(text: &str, line: usize, col: usize, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| config_err(line, col, format!("expected {what}, found '{text}'")))
}

fn parse_real(text: &str, line: usize, col: usize) -> Result<f64> {
    let v: f64 = parse_value(text, line, col, "a real number")?;
    if v.is_nan() {
        return Err(config_err(line, col, "NaN is not allowed"));
    }
    Ok(v)
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig {
        tap_values: None,
        ..ScenarioConfig::default()
    };
    let mut seen: HashSet<&'static str> = HashSet::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(config_err(line_no, col, "expected 'key = value'"));
        };
        let key = line[..eq].trim();
        let key_col = line.len() - line.trim_start().len() + 1;
        let value_raw = &line[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        if value.is_empty() {
            return Err(config_err(line_no, value_col, format!("missing value for '{key}'")));
        }

        let canonical: &'static str = match key {
            "length" => {
                cfg.length = parse_value(value, line_no, value_col, "a non-negative integer")?;
                "length"
            }
            "active_taps" => {
                cfg.active_taps = list_items(value, value_col)
                    .into_iter()
                    .map(|(item, col)| parse_value(item, line_no, col, "a tap index"))
                    .collect::<Result<_>>()?;
                "active_taps"
            }
            "tap_values" => {
                cfg.tap_values = Some(
                    list_items(value, value_col)
                        .into_iter()
                        .map(|(item, col)| {
                            item.parse::<Quaternion>()
                                .map_err(|e| config_err(line_no, col, e.to_string()))
                        })
                        .collect::<Result<_>>()?,
                );
                "tap_values"
            }
            "mu" => {
                cfg.mu = parse_real(value, line_no, value_col)?;
                "mu"
            }
            "rho" => {
                cfg.rho = parse_real(value, line_no, value_col)?;
                "rho"
            }
            "snr_db" => {
                cfg.snr_db = parse_real(value, line_no, value_col)?;
                "snr_db"
            }
            "num_iterations" => {
                cfg.num_iterations = parse_value(value, line_no, value_col, "a non-negative integer")?;
                "num_iterations"
            }
            "num_runs" => {
                cfg.num_runs = parse_value(value, line_no, value_col, "a non-negative integer")?;
                "num_runs"
            }
            "seed" => {
                cfg.master_seed = parse_value(value, line_no, value_col, "an unsigned 64-bit integer")?;
                "seed"
            }
            "coloring_len" => {
                cfg.coloring_len = parse_value(value, line_no, value_col, "a non-negative integer")?;
                "coloring_len"
            }
            "coloring" => {
                cfg.coloring = match value {
                    "quaternion" => ColoringKind::Quaternion,
                    "real" => ColoringKind::Real,
                    other => {
                        return Err(config_err(
                            line_no,
                            value_col,
                            format!("expected 'quaternion' or 'real', found '{other}'"),
                        ))
                    }
                };
                "coloring"
            }
            "input_power" => {
                cfg.input_power = parse_real(value, line_no, value_col)?;
                "input_power"
            }
            "algorithms" => {
                cfg.algorithms = list_items(value, value_col)
                    .into_iter()
                    .map(|(item, col)| item.parse::<Algorithm>().map_err(|e| config_err(line_no, col, e)))
                    .collect::<Result<_>>()?;
                "algorithms"
            }
            other => return Err(config_err(line_no, key_col, format!("unknown key '{other}'"))),
        };
        if !seen.insert(canonical) {
            return Err(config_err(line_no, key_col, format!("duplicate key '{canonical}'")));
        }
    }

    if let Some(missing) = REQUIRED.iter().find(|k| !seen.contains(*k)) {
        return Err(Error::InvalidParameter {
            field: missing,
            reason: "missing from config".into(),
        });
    }
    cfg.validate()?;
    Ok(cfg)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Canonical text form; [`parse_config`] reads it back to an equal config.
pub fn render_config(cfg: &ScenarioConfig) -> String {
    let mut out = String::new();
    let mut put = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
    put("length", cfg.length.to_string());
    put("active_taps", join(&cfg.active_taps));
    if let Some(values) = &cfg.tap_values {
        put("tap_values", join(values));
    }
    put("mu", cfg.mu.to_string());
    put("rho", cfg.rho.to_string());
    put("snr_db", cfg.snr_db.to_string());
    put("num_iterations", cfg.num_iterations.to_string());
    put("num_runs", cfg.num_runs.to_string());
    put("seed", cfg.master_seed.to_string());
    put("coloring_len", cfg.coloring_len.to_string());
    put(
        "coloring",
        match cfg.coloring {
            ColoringKind::Quaternion => "quaternion",
            ColoringKind::Real => "real",
        }
        .to_string(),
    );
    put("input_power", cfg.input_power.to_string());
    put("algorithms", join(&cfg.algorithms));
    out
}
