use alloc::string::String;

use thiserror::Error;

/// Errors raised on malformed input. Infinite divergences are values, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution has no entries")]
    Empty,

    #[error("entry {index} is not a finite number")]
    NonFinite { index: usize },

    #[error("negative probability mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },

    #[error("distributions have different support sizes: {left} vs {right}")]
    SupportMismatch { left: usize, right: usize },

    #[error("order lambda = {0} is outside (0, 1)")]
    LambdaOutOfRange(f64),

    #[error("total variation distance {0} is outside the admissible range")]
    EpsilonOutOfRange(f64),

    #[error("parameter `{name}` = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("generator of `{0}` does not define a symmetric f-divergence")]
    NotSymmetric(&'static str),

    #[error("generator of `{name}` is not convex near t = {at}")]
    NotConvex { name: &'static str, at: f64 },

    #[error("generator of `{name}` has f(1) = {value}, expected 0")]
    NonZeroAtOne { name: &'static str, value: f64 },

    #[error("code alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(u32),

    #[error("codeword length at symbol {index} must be positive")]
    ZeroLength { index: usize },

    #[error("{lengths} codeword lengths given for {symbols} source symbols")]
    LengthCountMismatch { lengths: usize, symbols: usize },

    #[error("Kraft sum {sum} exceeds 1; lengths cannot belong to a uniquely decodable code")]
    KraftViolation { sum: f64 },

    #[error("source symbol {index} has zero probability")]
    ZeroMassSymbol { index: usize },

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
}

pub type Result<T> = core::result::Result<T, Error>;
