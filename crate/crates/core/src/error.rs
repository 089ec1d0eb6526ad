use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fraction 0/0")]
    InvalidFraction,
    #[error("integer overflow")]
    Overflow,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid denominator sequence: {0}")]
    InvalidSequence(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no maximal polygon with cusp denominators <= {0}")]
    SearchExhausted(u64),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
