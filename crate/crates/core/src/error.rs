use thiserror::Error;

use crate::scenario::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A point or set does not belong to the ambient space.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Branch domains of a piecewise map do not partition the space.
    #[error("partition violation: {0}")]
    Partition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
