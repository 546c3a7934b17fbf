//! Quaternion-valued LMS adaptive filtering for sparse system
//! identification.
//!
//! The crate provides quaternion algebra ([`quaternion`], [`qvector`]), the
//! QLMS and zero-attracting QLMS updates ([`adaptive`]), a finite-difference
//! derivative oracle for quaternion variables ([`qcalculus`]), seedable
//! signal generation ([`signal`]), Monte-Carlo learning-curve experiments
//! ([`experiment`]), and the scenario-file and CSV formats used by the
//! `qlms-sparse` command line tool ([`config`], [`output`], [`cli`]).

pub mod adaptive;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod qcalculus;
pub mod quaternion;
pub mod qvector;
pub mod signal;

pub use adaptive::{FilterState, StepRecord};
pub use error::{Error, Result};
pub use experiment::{Algorithm, LearningCurve, ScenarioConfig};
pub use quaternion::Quaternion;
pub use qvector::QVector;
