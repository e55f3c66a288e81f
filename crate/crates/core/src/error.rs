use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("word length {0} is outside 1..=64")]
    WordLength(usize),
    #[error("invalid word symbol {0:?}")]
    InvalidSymbol(char),
    #[error("{0} does not satisfy the half-turn condition e_j = -e_(2t-j-1)")]
    NotHalfTurn(String),
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("{0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("closed form value {value:e} is at or above the 2^52 precision ceiling")]
    Precision { value: f64 },
    #[error("family `{0}` has no closed form; count it by enumeration")]
    NoClosedForm(&'static str),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
