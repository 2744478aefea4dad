use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A property the theory guarantees did not hold. Always a bug or a
    /// mis-specified input, never a tolerance question.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("conditioning failure: {context} (condition number {condition:.3e})")]
    Conditioning { context: String, condition: f64 },

    #[error("eigenvalue degeneracy: {0}")]
    Degeneracy(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
