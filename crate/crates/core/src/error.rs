use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension {0} (expected 1..=16)")]
    InvalidDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("empty selection")]
    EmptySelection,

    #[error("scheme error: {0}")]
    Scheme(String),

    #[error("infeasible point: {0}")]
    Infeasible(String),

    #[error("not optimal: {0}")]
    NotOptimal(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input (CLI exit code 2).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Solver(_))
    }
}
