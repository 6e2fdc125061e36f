use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
