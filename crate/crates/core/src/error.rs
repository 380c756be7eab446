use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("padding too small: cannot pad {partition} to degree {m} (need m >= {needed})")]
    PaddingTooSmall {
        partition: String,
        m: usize,
        needed: usize,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("degree {m} exceeds the enumeration budget ({limit})")]
    BudgetExceeded { m: usize, limit: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
