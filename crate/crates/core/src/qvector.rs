//! Fixed-length quaternion vectors: weight vectors `w` and regressors `x`.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Ordered, non-empty sequence of quaternions.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector(Vec<Quaternion>);

impl QVector {
    pub fn new(elems: Vec<Quaternion>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(QVector(elems))
    }

    /// All-zero vector of length `len`.
    ///
    /// # Panics
    /// If `len` is zero.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "QVector::zeros called with len 0");
        QVector(vec![Quaternion::ZERO; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [Quaternion] {
        &mut self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Quaternion> {
        self.0
    }

    fn check_len(&self, other: &QVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }

    /// Transpose product `wᵀx = Σ w_m·x_m`, each product taken in the order
    /// `w_m · x_m`.
    pub fn dot_t(&self, x: &QVector) -> Result<Quaternion> {
        self.check_len(x)?;
        Ok(self.0.iter().zip(&x.0).map(|(w, x)| *w * *x).sum())
    }

    pub fn conj_elems(&self) -> QVector {
        QVector(self.0.iter().map(|q| q.conj()).collect())
    }

    /// Sum of element moduli `Σ |w_m|`.
    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|q| q.norm()).sum()
    }

    /// Sum of squared element moduli `Σ |w_m|²`.
    pub fn energy(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    /// Element-wise quaternion sign.
    pub fn sgn_vec(&self) -> QVector {
        QVector(self.0.iter().map(|q| q.sgn()).collect())
    }

    pub fn scale(&self, r: f64) -> QVector {
        QVector(self.0.iter().map(|q| q.scale(r)).collect())
    }

    /// `alpha·u + v`, element-wise.
    pub fn axpy(alpha: f64, u: &QVector, v: &QVector) -> Result<QVector> {
        u.check_len(v)?;
        Ok(QVector(
            u.0.iter().zip(&v.0).map(|(u, v)| u.scale(alpha) + *v).collect(),
        ))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|q| q.is_finite())
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;

    fn index(&self, m: usize) -> &Quaternion {
        &self.0[m]
    }
}

impl<'a> IntoIterator for &'a QVector {
    type Item = &'a Quaternion;
    type IntoIter = std::slice::Iter<'a, Quaternion>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A-priori error `d − wᵀx`.
pub fn output_error(d: Quaternion, w: &QVector, x: &QVector) -> Result<Quaternion> {
    Ok(d - w.dot_t(x)?)
}
