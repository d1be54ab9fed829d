use thiserror::Error;

/// Errors produced by the algebraic and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point outside the chart domain: {0}")]
    OutOfChart(String),

    #[error("unsupported potential family for this operation: {0}")]
    Unsupported(String),

    #[error("grid mismatch: expected {expected} samples, got {actual}")]
    GridMismatch { expected: usize, actual: usize },

    #[error("found more than {max_count} eigenvalues below {below}")]
    MaxCountExceeded { below: f64, max_count: usize },

    #[error("waves are not proportional: {0}")]
    NotProportional(String),

    #[error("degenerate wave: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
