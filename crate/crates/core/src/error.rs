use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The number of objects to enumerate is larger than the caller allows.
    #[error("enumeration budget exceeded: {predicted} items predicted, cap is {cap}")]
    BudgetExceeded { predicted: BigUint, cap: u64 },

    /// An input vector violates one of the defining inequalities.
    #[error("invalid {what}: {detail}")]
    Invariant { what: &'static str, detail: String },

    /// The bounce parametrization stopped moving before reaching the next north step.
    #[error("bounce parametrization stalled at time {time} before north step {step}")]
    Stall { step: usize, time: String },

    /// A point where the piecewise-linear change of coordinates is not locally linear.
    #[error("degenerate bounce vector: {0}")]
    Degenerate(String),

    #[error("path is not 1/{m}-integral: coordinate {index} is {value}")]
    NotIntegral { m: u32, index: usize, value: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    pub(crate) fn invariant(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            what,
            detail: detail.into(),
        }
    }
}
