use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot expand as a power series in t: {0}")]
    NotExpandable(String),
    #[error("rational function has a pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource limit exceeded: about {estimate} candidates, limit is {limit}")]
    ResourceLimit { estimate: u128, limit: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
