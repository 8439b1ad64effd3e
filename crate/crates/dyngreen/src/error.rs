//! Crate error type and exit-code mapping.

use std::fmt;

/// Everything that can go wrong across the library.
///
/// Variants are grouped by the process exit code the CLI maps them to:
/// validation problems exit 1, property violations exit 2, resource limits
/// exit 3.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input fails a precondition (degree mismatch, zero lift, bad flag …).
    Validation(String),
    /// A mathematical identity or bound that must hold was observed to fail.
    PropertyViolation(String),
    /// A configured resource limit (bit size, basis size, iteration cap) hit.
    Resource(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn property(msg: impl Into<String>) -> Self {
        Error::PropertyViolation(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 1,
            Error::PropertyViolation(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(m) => write!(f, "validation error: {m}"),
            Error::PropertyViolation(m) => write!(f, "property violation: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
        }
    }
}

impl std::error::Error for Error {}
