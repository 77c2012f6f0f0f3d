use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("inhomogeneous relation: {0}")]
    Inhomogeneous(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("degree {requested} exceeds the completion bound {available}")]
    BoundExceeded { requested: u32, available: u32 },
    #[error("relation is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("subset does not generate the group")]
    NotGenerating,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
