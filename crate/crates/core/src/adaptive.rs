//! QLMS and zero-attracting QLMS (ZA-QLMS) weight updates.
//!
//! For a regressor `x[n]`, reference `d[n]` and weights `w[n]`:
//!
//! ```text
//! y[n]   = wᵀ[n] x[n]
//! e[n]   = d[n] − y[n]
//! w[n+1] = w[n] + μ·e[n]·x*[n] − ρ·sgn(w[n])
//! ```
//!
//! `e[n]·x*_m` keeps the error on the left; quaternion products do not
//! commute, so `x*_m·e[n]` would be a different algorithm. With `ρ = 0`
//! the update is plain QLMS.
//!
//! The update descends the instantaneous cost
//! `J(w) = |e|² + γ‖w‖₁` (with `‖w‖₁ = Σ|w_m|`) along its conjugate
//! gradient `−½·e·x* + ¼·γ·sgn(w)`; the ½ and ¼ are absorbed into `μ` and
//! `ρ = μγ`.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::qvector::{output_error, QVector};

/// Weights and hyperparameters of one adaptive filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    w: QVector,
    mu: f64,
    rho: f64,
    iteration: usize,
}

/// Output and a-priori error of one update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub y: Quaternion,
    pub e: Quaternion,
    pub iteration: usize,
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "mu",
            reason: format!("must be positive and finite, got {mu}"),
        })
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho >= 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "rho",
            reason: format!("must be non-negative and finite, got {rho}"),
        })
    }
}

impl FilterState {
    /// Zero-initialized filter of length `len`.
    pub fn new(len: usize, mu: f64, rho: f64) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyVector);
        }
        Self::with_weights(QVector::zeros(len), mu, rho)
    }

    pub fn with_weights(w: QVector, mu: f64, rho: f64) -> Result<Self> {
        check_mu(mu)?;
        check_rho(rho)?;
        if !w.is_finite() {
            return Err(Error::NonFinite("initial weights".into()));
        }
        Ok(FilterState {
            w,
            mu,
            rho,
            iteration: 0,
        })
    }

    pub fn weights(&self) -> &QVector {
        &self.w
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of updates applied so far.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn is_qlms(&self) -> bool {
        self.rho == 0.0
    }

    /// One ZA-QLMS update. The error is computed with the weights held
    /// before the update.
    ///
    /// Non-finite weights after the update are reported as
    /// [`Error::NonFiniteWeights`]; the state keeps the non-finite values.
    pub fn step(&mut self, x: &QVector, d: Quaternion) -> Result<StepRecord> {
        self.update(x, d, self.rho)
    }

    /// One plain QLMS update, ignoring `rho`.
    pub fn step_qlms(&mut self, x: &QVector, d: Quaternion) -> Result<StepRecord> {
        self.update(x, d, 0.0)
    }

    fn update(&mut self, x: &QVector, d: Quaternion, rho: f64) -> Result<StepRecord> {
        let y = self.w.dot_t(x)?;
        let e = d - y;
        let mu = self.mu;
        for (wm, xm) in self.w.as_mut_slice().iter_mut().zip(x) {
            let correction = (e * xm.conj()).scale(mu);
            let next = if rho == 0.0 {
                *wm + correction
            } else {
                *wm + correction - wm.sgn().scale(rho)
            };
            *wm = next;
        }
        let record = StepRecord {
            y,
            e,
            iteration: self.iteration,
        };
        self.iteration += 1;
        if !self.w.is_finite() {
            return Err(Error::NonFiniteWeights {
                iteration: record.iteration,
            });
        }
        Ok(record)
    }
}

/// Instantaneous cost `|d − wᵀx|² + γ·Σ|w_m|`.
pub fn za_cost(w: &QVector, x: &QVector, d: Quaternion, gamma: f64) -> Result<f64> {
    let e = output_error(d, w, x)?;
    Ok(e.norm_sqr() + gamma * w.l1_norm())
}

/// Closed-form conjugate gradient of [`za_cost`]:
/// `−½·e·x* + ¼·γ·sgn(w)`.
pub fn za_cost_gradient_conj(w: &QVector, x: &QVector, d: Quaternion, gamma: f64) -> Result<QVector> {
    let e = output_error(d, w, x)?;
    let grad: Vec<Quaternion> = x
        .iter()
        .zip(w)
        .map(|(xm, wm)| (e * xm.conj()).scale(-0.5) + wm.sgn().scale(0.25 * gamma))
        .collect();
    QVector::new(grad)
}
