use thiserror::Error;

use crate::degeneration::SeriesError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("unknown algebra id `{0}`")]
    UnknownAlgebra(String),
    #[error("parameter `{symbol}` = {value} is outside the domain of {id}")]
    ParameterOutOfDomain { id: String, symbol: String, value: String },
    #[error("{id} expects {expected} parameter(s), got {got}")]
    ParameterCount { id: String, expected: usize, got: usize },
    #[error("component {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot evaluate expression exactly: {0}")]
    NotExact(String),
    #[error("series engine: {0}")]
    Series(#[from] SeriesError),
    #[error("invalid data: {0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
