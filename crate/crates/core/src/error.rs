use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Verification *findings* (a residual that is not zero, a coefficient that
/// vanishes) are not errors; they are recorded in a [`crate::ProofReport`].
/// The variants here are for inputs that cannot be processed at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("q-exponent {exponent} exceeds the configured cap {cap}")]
    ExponentOverflow { exponent: usize, cap: usize },

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("eigenvalue collision: lambda_{m} = lambda_{n}")]
    EigenvalueCollision { m: usize, n: usize },

    #[error("orthogonality broken: {0}")]
    OrthogonalityBroken(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("dependency error: {0}")]
    Dependency(String),

    #[error("proportionality failure at n = {n}: {reason}")]
    ProportionalityFailure { n: usize, reason: String },

    #[error("no rational match: {0}")]
    NoRationalMatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
