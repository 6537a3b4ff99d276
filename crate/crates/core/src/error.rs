//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Division by an element that is not a unit in the truncated ring.
    #[error("division by a non-unit")]
    NonUnitDivision,
    /// The working precision is too small to decide a requested bound.
    #[error("precision too small: need more than {needed}, have {have}")]
    PrecisionTooSmall { needed: String, have: String },
    /// Operands live in different rings (different prime, ramification, ...).
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    /// A division that was required to be exact left a remainder.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    /// A parameter point falls outside the regime in which a statement applies.
    #[error("degenerate parameter point: {0}")]
    Degenerate(String),
    /// A matrix that must be invertible turned out singular.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// A stored or computed assertion does not hold.
    #[error("check failed: {check}: {detail}")]
    CheckFailed { check: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
