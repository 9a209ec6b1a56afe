use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("outside the strip of analyticity: {0}")]
    Strip(String),
    #[error("wrong regime: {0}")]
    Regime(String),
    #[error("not implemented: {0}")]
    Unimplemented(String),
    #[error("integer order: {0}")]
    IntegerNu(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
