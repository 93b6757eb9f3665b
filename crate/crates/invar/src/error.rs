use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtension,
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different field contexts")]
    MixedField,
    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("orbit size exceeds bound {0}")]
    OrbitBound(usize),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
