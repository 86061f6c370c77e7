use thiserror::Error;

use crate::gauss::ArrowId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error on line {line}: bad token `{token}`")]
    Syntax { line: usize, token: String },
    #[error("invalid diagram: {0}")]
    Semantic(String),
    #[error("arrow {0} is not in the diagram")]
    NoSuchArrow(ArrowId),
    #[error("arrow {0} is not persistent (marking {1}, n = {2})")]
    NotPersistent(ArrowId, usize, usize),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("not a triangle: {0}")]
    NotTriangle(String),
    #[error("loop is not closed: {0}")]
    OpenLoop(String),
    #[error("event {index} failed: {source}")]
    Event { index: usize, source: Box<Error> },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
