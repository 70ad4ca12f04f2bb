use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {arg} is outside the domain ({reason})")]
    Domain {
        function: &'static str,
        arg: f64,
        reason: &'static str,
    },

    #[error("{function}: dimension {d} is not supported ({reason})")]
    UnsupportedDimension {
        function: &'static str,
        d: u32,
        reason: &'static str,
    },

    #[error("invalid cavity: {0}")]
    InvalidCavity(String),

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid accuracy contract: {0}")]
    InvalidContract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, arg: f64, reason: &'static str) -> Error {
    Error::Domain {
        function,
        arg,
        reason,
    }
}
