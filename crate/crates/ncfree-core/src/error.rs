use thiserror::Error;

/// Errors surfaced by solvers, evaluators and parsers.
///
/// Structural misuse of the ring operations (mixing coefficient algebras or
/// variable counts) panics instead, like dimension mismatches in the matrix
/// ecosystem crates.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator requires a single-letter polynomial algebra")]
    MultiLetterRejected,
    #[error("operation requires scalar coefficients")]
    ScalarCoefficientsRequired,
    #[error("no antiderivative exists: {0}")]
    NotExact(String),
    #[error("polynomial is not in the kernel of the cyclic derivative")]
    NotInKernel,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
