use thiserror::Error;

use crate::geometry::NegativeTypeReport;

/// Errors produced by the divergence library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha must be a finite number > 0 (got {0})")]
    InvalidAlpha(f64),

    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },

    #[error("label count {labels} does not match probability count {probs}")]
    LabelMismatch { labels: usize, probs: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, not 1")]
    TraceDeviation(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state is not pure (largest eigenvalue {0})")]
    NotPure(f64),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("entropy-difference ({entropy_difference}) and averaged-divergence ({kl_average}) forms disagree")]
    FormulaMismatch {
        entropy_difference: f64,
        kl_average: f64,
    },

    #[error("identity is only defined for finite divergences; a term is infinite")]
    InfiniteDivergence,

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("distance matrix is not of negative type (min centered eigenvalue {})", .0.witness_min_eigenvalue)]
    NotNegativeType(Box<NegativeTypeReport>),

    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be distinct")]
    RepeatedIndex,

    #[error("{n} points exceed the subset-enumeration limit of {max}")]
    TooManyPoints { n: usize, max: usize },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("embedding reconstruction error {0:e} exceeds tolerance")]
    Reconstruction(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
