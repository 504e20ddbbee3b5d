use thiserror::Error;

/// Errors produced by the optimizer and the problem catalog.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Selection and partition disagree, or a structural limit was exceeded.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("problem `{name}` with n = {n} is not in the catalog")]
    NotFound { name: String, n: usize },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("objective returned a non-finite value ({value}) at the initial midpoint")]
    ObjectiveFailure { value: f64 },

    #[error("catalog defect in `{name}` (n = {n}): |f(x*) - f*| = {residual:e}")]
    CatalogDefect {
        name: String,
        n: usize,
        residual: f64,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
