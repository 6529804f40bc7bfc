//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by simulator operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: String, reason: String },

    /// Operand shapes do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A linear-algebra routine failed (rank deficiency, no convergence).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A hardware or search-window constraint was violated.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// Experiment configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// A module error raised while running an experiment, with coordinates.
    #[error("experiment failed at sweep index {sweep_index}, trial {trial}: {source}")]
    Experiment {
        sweep_index: usize,
        trial: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
