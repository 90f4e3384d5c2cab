use thiserror::Error;

use crate::pauli_expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("unknown tag or label: {0}")]
    UnknownTag(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("no composing rotation found: {0}")]
    ConventionMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("identity check failed: {0}")]
    IdentityViolated(String),

    #[error("{0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
