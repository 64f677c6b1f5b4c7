use num_bigint::BigInt;
use thiserror::Error;

/// Failures shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested enumeration is larger than the configured budget.
    #[error("capacity exceeded: {what} needs {required}, limit is {limit}")]
    Capacity {
        what: String,
        required: u128,
        limit: u128,
    },

    /// Two different bounded sparse signals reproduce the same measurements.
    #[error("ambiguous recovery: {first:?} and {second:?} give the same measurements")]
    Ambiguous {
        first: Vec<BigInt>,
        second: Vec<BigInt>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, required: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.into(),
            required,
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
