use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("duplicate monomer name `{0}`")]
    DuplicateMonomer(String),
    #[error("monomer `{0}` has no domains")]
    EmptyMonomer(String),
    #[error("unknown monomer `{0}`")]
    UnknownMonomer(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("collection is empty")]
    EmptyCollection,
    #[error("enumeration cap exceeded: {instances} domain instances > cap {cap}; use the partition solver instead")]
    CapExceeded { instances: usize, cap: usize },
    #[error("no saturated configuration satisfies the predicate (unbounded distance)")]
    Infeasible,
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
