use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot peel: multiplicity {0} is not provably >= 1")]
    CannotPeel(String),
    #[error("not tabulated: {0}")]
    NotTabulated(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
