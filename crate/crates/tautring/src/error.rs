//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input data (bad graph, wrong vector length, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for `Error::Invalid` with format arguments.
#[macro_export]
macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::Invalid(format!($($arg)*))
    };
}
