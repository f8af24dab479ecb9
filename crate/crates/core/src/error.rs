use thiserror::Error;

/// Errors raised by frame, poset and dual computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("matrix is not positive definite (min eigenvalue {min}, max eigenvalue {max})")]
    NotPositiveDefinite { min: f64, max: f64 },
    #[error("matrix is not Hermitian (asymmetry {asymmetry})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors do not span the ambient space")]
    NotAFrame,
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("a frame needs at least one vector")]
    EmptyFrame,
    #[error("index subset is empty")]
    EmptySubset,
    #[error("index {index} out of range for a ground set of size {ground}")]
    IndexOutOfRange { index: usize, ground: usize },
    #[error("vector {0} is zero; factor-poset operations need nonzero vectors")]
    ZeroVector(usize),
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("real frame has an entry with nonzero imaginary part")]
    ComplexEntryInRealFrame,
    #[error("ground set of size {k} exceeds the cap {cap}")]
    GroundSetTooLarge { k: usize, cap: usize },
    #[error("sets are not members of the poset")]
    NotMembers,
    #[error("frame is not tight")]
    NotTight,
    #[error("rejection sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error("operation requires a real frame in R^2")]
    WrongDimension,
    #[error("integer search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("duals belong to different families")]
    FamilyMismatch,
    #[error("dual element is not a tight dual")]
    NotTightDual,
    #[error("subframe does not span the ambient space")]
    SubframeNotFrame,
    #[error("vectors are not a dual (residual {0:e})")]
    NotADual(f64),
    #[error("frame is not a basis")]
    NotABasis,
    #[error("canonical dual has a zero vector at index {0}")]
    ZeroDualVector(usize),
    #[error("invalid exponent p = {0}")]
    InvalidExponent(f64),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("projected frame does not reproduce the factor poset; the tolerance is too close to a near-tight subset")]
    ProjectionMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FrameError>;
