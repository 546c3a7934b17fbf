//! Seedable generation of the stochastic inputs of a system-identification
//! experiment: quaternion white Gaussian sources, a random coloring FIR, the
//! sparse unknown system and SNR-scaled observation noise.
//!
//! Randomness comes from ChaCha8 keyed by a master seed, with one ChaCha
//! stream per purpose and run. A run's sequences therefore depend only on
//! `(seed, run, purpose)`, never on the order runs are executed in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::qvector::QVector;

/// What a random stream is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamKind {
    Input = 0,
    Coloring = 1,
    System = 2,
    Noise = 3,
}

/// Stream ids with this bit set are shared by every run of an experiment.
const SHARED_BIT: u64 = 1 << 63;
const KINDS_PER_RUN: u64 = 4;

/// An independent, reproducible random sub-stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// Per-run stream, e.g. the input or noise of Monte-Carlo run `run`.
    pub fn for_run(seed: u64, run: usize, kind: StreamKind) -> Self {
        RngStream::new(seed, run as u64 * KINDS_PER_RUN + kind as u64)
    }

    /// Stream shared by all runs, e.g. the unknown system.
    pub fn shared(seed: u64, kind: StreamKind) -> Self {
        RngStream::new(seed, SHARED_BIT | kind as u64)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

fn gaussian_quaternion<R: Rng + ?Sized>(rng: &mut R, sd: f64) -> Quaternion {
    let mut draw = || sd * rng.sample::<f64, _>(StandardNormal);
    Quaternion::new(draw(), draw(), draw(), draw())
}

/// `n` white quaternion Gaussian samples with `E|q|² = sigma2`; each real
/// component has variance `sigma2 / 4`.
pub fn white_qgauss(stream: &RngStream, n: usize, sigma2: f64) -> Result<Vec<Quaternion>> {
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "sigma2",
            reason: format!("must be positive and finite, got {sigma2}"),
        });
    }
    let sd = (sigma2 / 4.0).sqrt();
    let mut rng = stream.rng();
    Ok((0..n).map(|_| gaussian_quaternion(&mut rng, sd)).collect())
}

/// Random unit-energy FIR (`Σ|h_m|² = 1`). With `quaternion_taps` false the
/// taps are real.
pub fn gen_coloring_filter(stream: &RngStream, len: usize, quaternion_taps: bool) -> Result<QVector> {
    if len == 0 {
        return Err(Error::InvalidParameter {
            field: "coloring_len",
            reason: "must be at least 1".into(),
        });
    }
    let mut rng = stream.rng();
    let taps: Vec<Quaternion> = (0..len)
        .map(|_| {
            if quaternion_taps {
                gaussian_quaternion(&mut rng, 1.0)
            } else {
                Quaternion::real(rng.sample(StandardNormal))
            }
        })
        .collect();
    let h = QVector::new(taps)?;
    let energy = h.energy();
    if energy == 0.0 {
        // Probability zero for a Gaussian draw.
        return Err(Error::NonFinite("coloring filter with zero energy".into()));
    }
    Ok(h.scale(1.0 / energy.sqrt()))
}

/// Causal FIR convolution `y[n] = Σ_m h_m·input[n−m]`, zero before the
/// first sample; each product is taken as `h_m · input`.
pub fn fir_filter(h: &QVector, input: &[Quaternion]) -> Vec<Quaternion> {
    let taps = h.as_slice();
    (0..input.len())
        .map(|n| {
            taps.iter()
                .take(n + 1)
                .enumerate()
                .map(|(m, hm)| *hm * input[n - m])
                .sum()
        })
        .collect()
}

/// Mean of `|q|²` over a sequence.
pub fn mean_power(seq: &[Quaternion]) -> f64 {
    if seq.is_empty() {
        return 0.0;
    }
    seq.iter().map(|q| q.norm_sqr()).sum::<f64>() / seq.len() as f64
}

/// Rescales `noise` so that `10·log10(P_signal / P_noise) = snr_db`, with
/// powers measured empirically. `snr_db = +∞` gives all-zero noise.
pub fn scale_noise_to_snr(signal: &[Quaternion], noise: &[Quaternion], snr_db: f64) -> Result<Vec<Quaternion>> {
    if signal.is_empty() || noise.is_empty() {
        return Err(Error::EmptyVector);
    }
    if signal.len() != noise.len() {
        return Err(Error::LengthMismatch {
            expected: signal.len(),
            actual: noise.len(),
        });
    }
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter {
            field: "snr_db",
            reason: format!("must be finite or +inf, got {snr_db}"),
        });
    }
    let p_signal = mean_power(signal);
    if p_signal == 0.0 {
        return Err(Error::ZeroSignalPower);
    }
    if snr_db == f64::INFINITY {
        return Ok(vec![Quaternion::ZERO; noise.len()]);
    }
    let p_noise = mean_power(noise);
    if p_noise == 0.0 {
        return Err(Error::ZeroNoisePower);
    }
    let target = p_signal / 10f64.powf(snr_db / 10.0);
    let gain = (target / p_noise).sqrt();
    Ok(noise.iter().map(|q| q.scale(gain)).collect())
}

/// A sparse FIR system: `tap_values[t]` sits at 0-based index
/// `active_taps[t]`, all other taps are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSystemSpec {
    pub length: usize,
    pub active_taps: Vec<usize>,
    pub tap_values: Vec<Quaternion>,
}

impl SparseSystemSpec {
    pub fn validate(&self) -> Result<()> {
        validate_taps(self.length, &self.active_taps)?;
        if self.tap_values.len() != self.active_taps.len() {
            return Err(Error::InvalidParameter {
                field: "tap_values",
                reason: format!(
                    "{} values for {} active taps",
                    self.tap_values.len(),
                    self.active_taps.len()
                ),
            });
        }
        if self.tap_values.iter().any(|q| !q.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "tap_values",
                reason: "non-finite value".into(),
            });
        }
        Ok(())
    }
}

/// Checks tap indices: non-empty, strictly increasing, all `< length`.
pub fn validate_taps(length: usize, taps: &[usize]) -> Result<()> {
    let invalid = |reason: String| {
        Err(Error::InvalidParameter {
            field: "active_taps",
            reason,
        })
    };
    if length == 0 {
        return Err(Error::InvalidParameter {
            field: "length",
            reason: "must be at least 1".into(),
        });
    }
    if taps.is_empty() {
        return invalid("at least one active tap is required".into());
    }
    if let Some(&t) = taps.iter().find(|&&t| t >= length) {
        return invalid(format!("index {t} out of range for length {length}"));
    }
    if taps.windows(2).any(|p| p[0] >= p[1]) {
        return invalid("indices must be strictly increasing without duplicates".into());
    }
    Ok(())
}

/// Unit-modulus random quaternions, one per active tap.
pub fn random_unit_taps(stream: &RngStream, count: usize) -> Vec<Quaternion> {
    let mut rng = stream.rng();
    (0..count)
        .map(|_| loop {
            let q = gaussian_quaternion(&mut rng, 1.0);
            if q.norm() > 0.0 {
                break q.sgn();
            }
        })
        .collect()
}

pub fn build_system(spec: &SparseSystemSpec) -> Result<QVector> {
    spec.validate()?;
    let mut w = QVector::zeros(spec.length);
    for (&t, &v) in spec.active_taps.iter().zip(&spec.tap_values) {
        w.as_mut_slice()[t] = v;
    }
    Ok(w)
}
