//! Finite probability distributions and the total variation distance.
//!
//! Symbols are the indices `0..n`. Pairwise operations zero-pad the shorter
//! distribution, so `(0.5, 0.5)` and `(0.5, 0.5, 0.0)` describe the same
//! measure. Callers that want a length mismatch to be an error use
//! [`check_support`] first.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Absolute tolerance on `|Σ p − 1|` accepted by [`Distribution::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A validated probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates `values` and wraps them without renormalizing.
    pub fn new(values: impl Into<Vec<f64>>) -> Result<Self> {
        let probs = values.into();
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeMass { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if math::abs(sum - 1.0) > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    /// Uniform distribution on `n ≥ 1` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            probs: alloc::vec![1.0 / n as f64; n],
        })
    }

    /// Built from values the caller has already validated (grid points,
    /// closed-form constructions).
    pub(crate) fn from_vec_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(!probs.is_empty());
        debug_assert!(math::abs(probs.iter().sum::<f64>() - 1.0) <= NORMALIZATION_TOLERANCE);
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always `false`; a `Distribution` has at least one entry.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Mass at `index`, `0` past the end (zero padding).
    pub fn mass(&self, index: usize) -> f64 {
        self.probs.get(index).copied().unwrap_or(0.0)
    }

    /// Copy extended with zeros to `n` entries. Never truncates.
    pub fn padded(&self, n: usize) -> Self {
        let mut probs = self.probs.clone();
        if n > probs.len() {
            probs.resize(n, 0.0);
        }
        Self { probs }
    }

    /// Shannon entropy in nats.
    pub fn entropy_nats(&self) -> f64 {
        -self.probs.iter().map(|&p| math::xlogx(p)).sum::<f64>()
    }

    /// Shannon entropy to the given base (`base > 1`).
    pub fn entropy(&self, base: f64) -> Result<f64> {
        if !(base > 1.0 && base.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "base",
                value: base,
            });
        }
        Ok((self.entropy_nats() / math::ln(base)).max(0.0))
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Fails with [`Error::SupportMismatch`] when `p` and `q` have different lengths.
pub fn check_support(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::SupportMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// `(p(x), q(x))` over the union of both supports, zero-padding the shorter.
pub(crate) fn aligned<'a>(
    p: &'a Distribution,
    q: &'a Distribution,
) -> impl Iterator<Item = (f64, f64)> + 'a {
    let n = p.len().max(q.len());
    (0..n).map(move |i| (p.mass(i), q.mass(i)))
}

/// `½ Σ |p(x) − q(x)|`, in `[0, 1]`.
pub fn total_variation(p: &Distribution, q: &Distribution) -> f64 {
    let l1: f64 = aligned(p, q).map(|(a, b)| math::abs(a - b)).sum();
    (0.5 * l1).min(1.0)
}

/// Free-function form of [`Distribution::entropy`].
pub fn entropy(p: &Distribution, base: f64) -> Result<f64> {
    p.entropy(base)
}
