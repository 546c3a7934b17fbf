//! Monte-Carlo sparse system identification: QLMS and ZA-QLMS run side by
//! side on identical input and noise realizations, and their squared errors
//! are averaged into learning curves.
//!
//! Each run draws a white quaternion Gaussian source, colors it with a
//! random unit-energy FIR, and passes it through the unknown sparse system.
//! Observation noise is scaled to the configured SNR. The regressor at
//! iteration `n` is `x[n] = [u[n−1], …, u[n−L]]` with zeros before the first
//! sample, so the curve starts at iteration 0 with an all-zero regressor.
//! The unknown system and the coloring filter are drawn once per
//! experiment; input and noise are drawn per run.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::adaptive::FilterState;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::qvector::QVector;
use crate::signal::{
    build_system, fir_filter, gen_coloring_filter, random_unit_taps, scale_noise_to_snr, validate_taps, white_qgauss,
    RngStream, SparseSystemSpec, StreamKind,
};

/// A run is declared diverged once `|e|²` exceeds this multiple of the
/// run's zero-weight MSE (the mean of `|d|²`).
pub const DIVERGENCE_FACTOR: f64 = 1e6;

/// Debounce window of [`convergence_iteration`].
pub const CONVERGENCE_HOLD: usize = 100;
/// Allowed excursion above the threshold inside the debounce window, in dB.
pub const CONVERGENCE_SLACK_DB: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Qlms,
    ZaQlms,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Qlms => "qlms",
            Algorithm::ZaQlms => "za_qlms",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "qlms" => Ok(Algorithm::Qlms),
            "za_qlms" | "za-qlms" | "zaqlms" => Ok(Algorithm::ZaQlms),
            other => Err(format!("unknown algorithm '{other}' (expected qlms or za_qlms)")),
        }
    }
}

/// Whether the coloring filter has quaternion or real taps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringKind {
    Quaternion,
    Real,
}

/// How Monte-Carlo runs are scheduled. Results do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Full description of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Length `L` of both the unknown system and the adaptive filters.
    pub length: usize,
    /// 0-based indices of the nonzero taps.
    pub active_taps: Vec<usize>,
    /// Values of the nonzero taps; random unit-modulus when `None`.
    pub tap_values: Option<Vec<Quaternion>>,
    pub mu: f64,
    pub rho: f64,
    /// Observation SNR in dB; `+inf` means noiseless.
    pub snr_db: f64,
    pub num_iterations: usize,
    pub num_runs: usize,
    pub coloring_len: usize,
    pub coloring: ColoringKind,
    /// Power `E|q|²` of the white source before coloring.
    pub input_power: f64,
    pub master_seed: u64,
    pub algorithms: Vec<Algorithm>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            length: 16,
            active_taps: vec![0],
            tap_values: None,
            mu: 1e-3,
            rho: 0.0,
            snr_db: 30.0,
            num_iterations: 1000,
            num_runs: 1,
            coloring_len: 5,
            coloring: ColoringKind::Quaternion,
            input_power: 1.0,
            master_seed: 0,
            algorithms: vec![Algorithm::Qlms, Algorithm::ZaQlms],
        }
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        validate_taps(self.length, &self.active_taps)?;
        if let Some(values) = &self.tap_values {
            if values.len() != self.active_taps.len() {
                return Err(invalid(
                    "tap_values",
                    format!("{} values for {} active taps", values.len(), self.active_taps.len()),
                ));
            }
            if values.iter().any(|q| !q.is_finite()) {
                return Err(invalid("tap_values", "non-finite value"));
            }
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(invalid("mu", format!("must be positive and finite, got {}", self.mu)));
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(invalid(
                "rho",
                format!("must be non-negative and finite, got {}", self.rho),
            ));
        }
        if self.snr_db.is_nan() || self.snr_db == f64::NEG_INFINITY {
            return Err(invalid("snr_db", format!("must be finite or inf, got {}", self.snr_db)));
        }
        if self.num_iterations == 0 {
            return Err(invalid("num_iterations", "must be at least 1"));
        }
        if self.num_runs == 0 {
            return Err(invalid("num_runs", "must be at least 1"));
        }
        if self.coloring_len == 0 {
            return Err(invalid("coloring_len", "must be at least 1"));
        }
        if !(self.input_power > 0.0 && self.input_power.is_finite()) {
            return Err(invalid(
                "input_power",
                format!("must be positive and finite, got {}", self.input_power),
            ));
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms", "at least one algorithm is required"));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(invalid("algorithms", format!("{a} listed twice")));
            }
        }
        Ok(())
    }

    /// The unknown system, drawing tap values from the system stream when
    /// the config leaves them open.
    pub fn system_spec(&self) -> SparseSystemSpec {
        let tap_values = match &self.tap_values {
            Some(v) => v.clone(),
            None => random_unit_taps(
                &RngStream::shared(self.master_seed, StreamKind::System),
                self.active_taps.len(),
            ),
        };
        SparseSystemSpec {
            length: self.length,
            active_taps: self.active_taps.clone(),
            tap_values,
        }
    }

    fn rho_for(&self, algorithm: Algorithm) -> f64 {
        match algorithm {
            Algorithm::Qlms => 0.0,
            Algorithm::ZaQlms => self.rho,
        }
    }
}

/// Per-iteration MSE of one algorithm, averaged over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub algorithm: Algorithm,
    pub mse_linear: Vec<f64>,
    pub mse_db: Vec<f64>,
}

impl LearningCurve {
    pub fn from_linear(algorithm: Algorithm, mse_linear: Vec<f64>) -> Self {
        let mse_db = mse_linear.iter().map(|&m| to_db(m)).collect();
        LearningCurve {
            algorithm,
            mse_linear,
            mse_db,
        }
    }

    pub fn len(&self) -> usize {
        self.mse_linear.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mse_linear.is_empty()
    }

    pub fn steady_state_db(&self, tail_fraction: f64) -> Result<f64> {
        steady_state_mse(self, tail_fraction)
    }

    pub fn convergence_iteration(&self, threshold_db: f64) -> Option<usize> {
        convergence_iteration(self, threshold_db)
    }
}

pub fn to_db(power: f64) -> f64 {
    10.0 * power.log10()
}

/// Mean of `mse_db` over the last `tail_fraction` of the iterations
/// (rounded to the nearest count).
pub fn steady_state_mse(curve: &LearningCurve, tail_fraction: f64) -> Result<f64> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(invalid(
            "tail_fraction",
            format!("must lie in (0, 1], got {tail_fraction}"),
        ));
    }
    let n = curve.mse_db.len();
    let count = ((n as f64) * tail_fraction).round() as usize;
    if count == 0 {
        return Err(Error::EmptyTail);
    }
    let tail = &curve.mse_db[n - count..];
    Ok(tail.iter().sum::<f64>() / count as f64)
}

/// First iteration at which the curve is at or below `threshold_db` and
/// stays within [`CONVERGENCE_SLACK_DB`] of it for the following
/// [`CONVERGENCE_HOLD`] iterations (or until the curve ends).
pub fn convergence_iteration(curve: &LearningCurve, threshold_db: f64) -> Option<usize> {
    let db = &curve.mse_db;
    let ceiling = threshold_db + CONVERGENCE_SLACK_DB;
    (0..db.len()).find(|&n| {
        db[n] <= threshold_db
            && db[n + 1..db.len().min(n + 1 + CONVERGENCE_HOLD)]
                .iter()
                .all(|&v| v <= ceiling)
    })
}

/// Sliding regressor `[u[n−1], …, u[n−L]]`.
struct Regressor {
    x: QVector,
}

impl Regressor {
    fn new(len: usize) -> Self {
        Regressor { x: QVector::zeros(len) }
    }

    fn push(&mut self, sample: Quaternion) {
        let s = self.x.as_mut_slice();
        s.rotate_right(1);
        s[0] = sample;
    }
}

/// One Monte-Carlo realization: colored input and noisy reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub input: Vec<Quaternion>,
    pub desired: Vec<Quaternion>,
}

/// Shared pieces of an experiment: the validated config, the unknown system
/// and the coloring filter.
#[derive(Debug, Clone)]
pub struct Experiment {
    config: ScenarioConfig,
    system: QVector,
    coloring: QVector,
}

impl Experiment {
    pub fn new(config: &ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let system = build_system(&config.system_spec())?;
        let coloring = gen_coloring_filter(
            &RngStream::shared(config.master_seed, StreamKind::Coloring),
            config.coloring_len,
            config.coloring == ColoringKind::Quaternion,
        )?;
        Ok(Experiment {
            config: config.clone(),
            system,
            coloring,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn system(&self) -> &QVector {
        &self.system
    }

    pub fn coloring(&self) -> &QVector {
        &self.coloring
    }

    pub fn realization(&self, run_index: usize) -> Result<Realization> {
        let cfg = &self.config;
        let n = cfg.num_iterations;
        let seed = cfg.master_seed;
        let white = white_qgauss(
            &RngStream::for_run(seed, run_index, StreamKind::Input),
            n,
            cfg.input_power,
        )?;
        let input = fir_filter(&self.coloring, &white);

        let mut reg = Regressor::new(cfg.length);
        let mut clean = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                reg.push(input[i - 1]);
            }
            clean.push(self.system.dot_t(&reg.x)?);
        }

        let desired = if cfg.snr_db == f64::INFINITY {
            clean
        } else {
            let raw = white_qgauss(&RngStream::for_run(seed, run_index, StreamKind::Noise), n, 1.0)?;
            let noise = match scale_noise_to_snr(&clean, &raw, cfg.snr_db) {
                Ok(noise) => noise,
                // A run too short to see any input (n = 1) has no signal to
                // measure; keep it noiseless rather than fail.
                Err(Error::ZeroSignalPower) => vec![Quaternion::ZERO; n],
                Err(e) => return Err(e),
            };
            clean.iter().zip(&noise).map(|(s, v)| *s + *v).collect()
        };
        Ok(Realization { input, desired })
    }

    /// Squared error magnitudes `|e[n]|²` of one algorithm on one
    /// realization, together with the final weights.
    pub fn adapt(
        &self,
        realization: &Realization,
        algorithm: Algorithm,
        run_index: usize,
    ) -> Result<(Vec<f64>, QVector)> {
        let cfg = &self.config;
        let mut state = FilterState::new(cfg.length, cfg.mu, cfg.rho_for(algorithm))?;
        let reference = crate::signal::mean_power(&realization.desired);
        let limit = DIVERGENCE_FACTOR * reference;
        let mut reg = Regressor::new(cfg.length);
        let mut errors = Vec::with_capacity(realization.desired.len());
        for (i, &d) in realization.desired.iter().enumerate() {
            if i > 0 {
                reg.push(realization.input[i - 1]);
            }
            let record = state.step(&reg.x, d).map_err(|e| match e {
                Error::NonFiniteWeights { iteration } => Error::Diverged { run_index, iteration },
                other => other,
            })?;
            let sq = record.e.norm_sqr();
            if !sq.is_finite() || (reference > 0.0 && sq > limit) {
                return Err(Error::Diverged {
                    run_index,
                    iteration: i,
                });
            }
            errors.push(sq);
        }
        Ok((errors, state.weights().clone()))
    }

    /// Squared-error sequences of every configured algorithm on run
    /// `run_index`, in config order.
    pub fn run(&self, run_index: usize) -> Result<Vec<Vec<f64>>> {
        let realization = self.realization(run_index)?;
        self.config
            .algorithms
            .iter()
            .map(|&a| self.adapt(&realization, a, run_index).map(|(e, _)| e))
            .collect()
    }

    pub fn run_all(&self, execution: Execution) -> Result<Vec<LearningCurve>> {
        let runs = self.config.num_runs;
        let per_run: Vec<Result<Vec<Vec<f64>>>> = match execution {
            Execution::Serial => (0..runs).map(|r| self.run(r)).collect(),
            Execution::Parallel => (0..runs).into_par_iter().map(|r| self.run(r)).collect(),
        };

        let n_iter = self.config.num_iterations;
        let mut sums = vec![vec![0.0; n_iter]; self.config.algorithms.len()];
        // Reduce in run order so the floating-point sums never depend on
        // scheduling.
        for run in per_run {
            for (acc, errors) in sums.iter_mut().zip(run?) {
                for (a, e) in acc.iter_mut().zip(errors) {
                    *a += e;
                }
            }
        }
        Ok(self
            .config
            .algorithms
            .iter()
            .zip(sums)
            .map(|(&alg, sum)| {
                let mean = sum.into_iter().map(|s| s / runs as f64).collect();
                LearningCurve::from_linear(alg, mean)
            })
            .collect())
    }
}

/// `|e[n]|²` of `algorithm` on run `run_index`.
pub fn run_single(config: &ScenarioConfig, run_index: usize, algorithm: Algorithm) -> Result<Vec<f64>> {
    let exp = Experiment::new(config)?;
    let realization = exp.realization(run_index)?;
    exp.adapt(&realization, algorithm, run_index).map(|(e, _)| e)
}

/// Averaged learning curves for every configured algorithm, runs executed
/// in parallel.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Vec<LearningCurve>> {
    run_scenario_with(config, Execution::Parallel)
}

pub fn run_scenario_with(config: &ScenarioConfig, execution: Execution) -> Result<Vec<LearningCurve>> {
    Experiment::new(config)?.run_all(execution)
}
