use thiserror::Error;

use crate::polygon::{Edge, SignatureError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Signature(#[from] SignatureError),

    #[error("invalid index pair: {0}")]
    IndexPair(String),

    #[error("edge {0} is not an edge of the instance")]
    UnknownEdge(Edge),

    #[error("edge {0} is not flippable")]
    NotFlippable(Edge),

    #[error("edge set is not a forest: {0}")]
    NotForest(String),

    #[error("no perfect matching: prefix condition fails at k = {k}")]
    NoMatching { k: usize },

    #[error("not a triangulation of the square polygon: {0}")]
    NotTriangulation(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("degenerate lift: {0}")]
    DegenerateLift(String),

    #[error("structural invariant violated: {0}")]
    Structural(String),

    #[error("{0}")]
    Domain(String),
}
