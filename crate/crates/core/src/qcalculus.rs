//! Finite-difference derivatives with respect to a quaternion vector and
//! its conjugate.
//!
//! For `f` of `w = [w_1 … w_M]` with `w_m = a_m + b_m·i + c_m·j + d_m·k`:
//!
//! ```text
//! ∂f/∂w_m  = ¼ (∂f/∂a_m − (∂f/∂b_m)·i − (∂f/∂c_m)·j − (∂f/∂d_m)·k)
//! ∂f/∂w*_m = ¼ (∂f/∂a_m + (∂f/∂b_m)·i + (∂f/∂c_m)·j + (∂f/∂d_m)·k)
//! ```
//!
//! The real partials are estimated by central differences, so results are
//! accurate to `O(h²)`. The units multiply the partials from the right; for
//! real-valued `f` the side does not matter.
//!
//! These routines are a test oracle for the closed-form gradients in
//! [`crate::adaptive`], and are kept independent of that code.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::qvector::QVector;

/// Default central-difference step at unit scale.
pub const DEFAULT_STEP: f64 = 1e-5;

/// One of the four real coordinates of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    A,
    B,
    C,
    D,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::A, Component::B, Component::C, Component::D];

    fn index(self) -> usize {
        match self {
            Component::A => 0,
            Component::B => 1,
            Component::C => 2,
            Component::D => 3,
        }
    }

    /// The basis unit `1`, `i`, `j` or `k` attached to this coordinate.
    pub fn unit(self) -> Quaternion {
        match self {
            Component::A => Quaternion::ONE,
            Component::B => Quaternion::I,
            Component::C => Quaternion::J,
            Component::D => Quaternion::K,
        }
    }
}

/// Lifts a real-valued field into a quaternion-valued one.
pub fn real_field<F>(f: F) -> impl Fn(&QVector) -> Quaternion
where
    F: Fn(&QVector) -> f64,
{
    move |w| Quaternion::real(f(w))
}

fn perturbed(w: &QVector, m: usize, comp: Component, delta: f64) -> QVector {
    let mut out = w.clone();
    let mut parts = out[m].to_array();
    parts[comp.index()] += delta;
    out.as_mut_slice()[m] = Quaternion::from_array(parts);
    out
}

fn eval<F>(f: &F, w: &QVector) -> Result<Quaternion>
where
    F: Fn(&QVector) -> Quaternion,
{
    let v = f(w);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("field evaluated to {v:?}")))
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "h",
            reason: format!("step must be positive and finite, got {h}"),
        })
    }
}

/// Central-difference estimate of `∂f/∂(comp of w_m)`. The step is
/// `h·max(1, |coordinate|)`.
pub fn partial<F>(f: &F, w: &QVector, m: usize, comp: Component, h: f64) -> Result<Quaternion>
where
    F: Fn(&QVector) -> Quaternion,
{
    check_step(h)?;
    if m >= w.len() {
        return Err(Error::LengthMismatch {
            expected: w.len(),
            actual: m + 1,
        });
    }
    let step = h * w[m].to_array()[comp.index()].abs().max(1.0);
    let plus = eval(f, &perturbed(w, m, comp, step))?;
    let minus = eval(f, &perturbed(w, m, comp, -step))?;
    Ok((plus - minus).scale(0.5 / step))
}

fn combine<F>(f: &F, w: &QVector, h: f64, imag_sign: f64) -> Result<QVector>
where
    F: Fn(&QVector) -> Quaternion,
{
    let mut out = Vec::with_capacity(w.len());
    for m in 0..w.len() {
        let mut acc = partial(f, w, m, Component::A, h)?;
        for comp in [Component::B, Component::C, Component::D] {
            acc += (partial(f, w, m, comp, h)? * comp.unit()).scale(imag_sign);
        }
        out.push(acc.scale(0.25));
    }
    QVector::new(out)
}

/// Numerical `∂f/∂w*`.
pub fn num_grad_conj<F>(f: &F, w: &QVector, h: f64) -> Result<QVector>
where
    F: Fn(&QVector) -> Quaternion,
{
    combine(f, w, h, 1.0)
}

/// Numerical `∂f/∂w`.
pub fn num_grad<F>(f: &F, w: &QVector, h: f64) -> Result<QVector>
where
    F: Fn(&QVector) -> Quaternion,
{
    combine(f, w, h, -1.0)
}

/// Largest component-wise residual of the product rule
/// `∂(fg)/∂θ = f·∂g/∂θ + ∂f/∂θ·g`, where `θ` is coordinate `comp` of
/// element `m`, with every derivative taken numerically.
pub fn check_product_rule<F, G>(f: &F, g: &G, w: &QVector, m: usize, comp: Component, h: f64) -> Result<f64>
where
    F: Fn(&QVector) -> Quaternion,
    G: Fn(&QVector) -> Quaternion,
{
    let fg = |v: &QVector| f(v) * g(v);
    let lhs = partial(&fg, w, m, comp, h)?;
    let rhs = eval(f, w)? * partial(g, w, m, comp, h)? + partial(f, w, m, comp, h)? * eval(g, w)?;
    Ok((lhs - rhs).to_array().iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}
