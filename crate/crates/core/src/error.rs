use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator matrix is singular (|det| = {0:e})")]
    SingularMatrix(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no built-in rotation for dimension {0}")]
    UnsupportedDimension(usize),
    #[error("rotation is not orthogonal (max |QᵀQ - I| = {0:e})")]
    NotOrthogonal(f64),
    #[error("constellation has fewer than two points")]
    DegenerateConstellation,
    #[error("{count} points exceed the enumeration cap {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("Nakagami shape m = {0} is below 0.5")]
    InvalidShape(f64),
    #[error("argument outside the domain: {0}")]
    DomainError(&'static str),
    #[error("no convergence: {0}")]
    ConvergenceFailure(&'static str),
    #[error("contour integration failed: {0}")]
    ContourFailure(&'static str),
    #[error("closed form not available: {0}")]
    ParameterUnsupported(&'static str),
    #[error("{count} summands exceed the cap of {cap}")]
    ExcessiveTerms { count: u128, cap: u128 },
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
