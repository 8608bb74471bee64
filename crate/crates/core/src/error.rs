use thiserror::Error;

use crate::scalar::Field;

/// Errors raised by the algebra, the interpretation layer, and the equation tools.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("rank {rank} too small: this operation needs rank >= {needed}")]
    RankTooSmall { rank: usize, needed: usize },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("not a member of {set}: {detail}")]
    NotMember { set: &'static str, detail: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("term is not linear in the variables: {0}")]
    Nonlinear(String),

    #[error("input is not flattened: {0}")]
    Unflattened(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
