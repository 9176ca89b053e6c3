//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide error. The variants mirror the failure classes the
/// command-line driver maps to exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller violated a documented precondition (non-unit vector,
    /// shape mismatch, inconsistent configuration, ...).
    Contract(String),
    /// Problem with input data: unknown element, missing labels,
    /// coincident atoms, singular cell.
    Data(String),
    /// A numeric failure: non-finite value produced during evaluation.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Data(msg) => write!(f, "data error: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

/// Shorthand for `Error::Contract` with formatting.
#[macro_export]
macro_rules! contract_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Contract(alloc::format!($($arg)*))
    };
}

/// Shorthand for `Error::Data` with formatting.
#[macro_export]
macro_rules! data_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Data(alloc::format!($($arg)*))
    };
}
