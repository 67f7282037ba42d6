//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// `Window` and `Certificate` are the two errors callers are expected to
/// recover from: both name the truncation degree that would have been
/// needed, so a driver can recompile the presentation on a larger window
/// and retry.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("window too small for {what}: need degree {required}, have {available}")]
    Window {
        what: String,
        required: usize,
        available: usize,
    },

    #[error("uncertified {what}: window {available} is below the certification bound {required}")]
    Certificate {
        what: String,
        required: usize,
        available: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("computation exceeds the size guard: {what} would need a {size}-dimensional expansion (cap {cap})")]
    SizeGuard { what: String, size: usize, cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn window(what: impl Into<String>, required: usize, available: usize) -> Self {
        Error::Window {
            what: what.into(),
            required,
            available,
        }
    }

    pub fn certificate(what: impl Into<String>, required: usize, available: usize) -> Self {
        Error::Certificate {
            what: what.into(),
            required,
            available,
        }
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
