//! Error type shared by all modules.

use std::fmt;

/// Errors raised by the calculus. The variants are chosen so a front end can
/// map them onto distinct exit codes: input problems, law violations found by
/// a validator, precondition refusals, and resource bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: dangling table references, unparsable documents,
    /// out-of-range indices. Distinct from a law violation.
    InputFormat(String),
    /// A well-formed structure violates one of its defining laws; the message
    /// names the first violated law and the witnessing cells or morphisms.
    LawViolation(String),
    /// An operation refused to run because a stated precondition fails
    /// (e.g. reconstructing a prederivator that is not quasi-representable).
    Precondition(String),
    /// A horn required by a quasicategory precondition admits no filler.
    NotQuasicategory { horn: String },
    /// Bounded congruence closure did not stabilize within the word bound.
    BoundExceeded(String),
    /// An enumeration exceeded the configured candidate budget.
    ResourceExhausted(String),
    /// An internal consistency assertion failed (e.g. a homotopy-class
    /// composite depended on the chosen filler). Signals a bug or invalid input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InputFormat(m) => write!(f, "input format error: {m}"),
            Error::LawViolation(m) => write!(f, "law violation: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::NotQuasicategory { horn } => {
                write!(f, "not a quasicategory: no filler for {horn}")
            }
            Error::BoundExceeded(m) => write!(f, "word bound exceeded: {m}"),
            Error::ResourceExhausted(m) => write!(f, "resource budget exceeded: {m}"),
            Error::Internal(m) => write!(f, "internal consistency error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
