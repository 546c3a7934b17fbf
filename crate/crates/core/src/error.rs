use thiserror::Error;

/// Errors raised by the library. Configuration problems carry the line
/// (and column, when known) of the offending input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("empty vector: quaternion vectors need at least one element")]
    EmptyVector,

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("cannot parse quaternion {input:?}: {reason}")]
    ParseQuaternion { input: String, reason: String },

    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("zero signal power: cannot scale noise to a target SNR")]
    ZeroSignalPower,

    #[error("zero noise power: cannot scale an all-zero noise sequence")]
    ZeroNoisePower,

    #[error("run {run_index} diverged at iteration {iteration}")]
    Diverged { run_index: usize, iteration: usize },

    #[error("weights became non-finite at iteration {iteration}")]
    NonFiniteWeights { iteration: usize },

    #[error("config line {line}, column {column}: {message}")]
    Config {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("empty tail: no iterations to average")]
    EmptyTail,

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("nothing to write: no learning curves")]
    NoCurves,
}

pub type Result<T> = std::result::Result<T, Error>;
