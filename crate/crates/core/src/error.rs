use thiserror::Error;

use crate::polyring::ParseError;
use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected a {expected} bundle, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("unknown kind '{0}'")]
    UnknownKind(String),
    #[error("parameter '{0}' is not declared")]
    UndeclaredParameter(String),
    #[error("bundle has free parameters: {0:?}")]
    FreeParameters(Vec<String>),
    #[error("structure constant index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("missing operation '{0}'")]
    MissingOp(String),
    #[error("unknown name '{0}' in template")]
    UnknownName(String),
    #[error("unknown name '{0}' collides with a bundle parameter")]
    NameCollision(String),
    #[error("dimension {0} exceeds the supported bound of 3")]
    TooLarge(usize),
    #[error("precondition failed with {} report entries", .0.len())]
    Precondition(Report),
    #[error("structural validation failed with {} violations", .0.len())]
    Invalid(Report),
    #[error("quotient closure failed with {} report entries", .0.len())]
    Closure(Report),
    #[error("polynomial: {0}")]
    Poly(#[from] ParseError),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("search space too large: {0}")]
    SearchSpace(String),
    #[error("template syntax: {0}")]
    Template(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
