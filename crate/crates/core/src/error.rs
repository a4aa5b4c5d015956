use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0:?}")]
    UnknownEdge(Edge),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph has no blockade")]
    NoBlockade,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("factor escapes every listed case: {0}")]
    Exhaustiveness(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
