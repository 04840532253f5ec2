use thiserror::Error;

use crate::problems::Problem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {0} does not exist")]
    MissingVertex(usize),

    #[error("edge {0}-{1} does not exist")]
    MissingEdge(usize, usize),

    #[error("instance too large: {what} has {size}, budget is {budget}")]
    TooLarge {
        what: &'static str,
        size: usize,
        budget: usize,
    },

    #[error("{0} is not supported for {1}")]
    Unsupported(&'static str, Problem),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("recursion made no progress on a graph with {0} vertices")]
    NoProgress(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
