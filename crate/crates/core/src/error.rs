use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not an action by automorphisms: {0}")]
    NotAnAction(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("cochains live on different groups")]
    GroupMismatch,

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("cochain is not normalized: nonzero value at {0:?}")]
    NotNormalized(Vec<usize>),

    #[error("unsupported cochain degree {0}")]
    UnsupportedDegree(usize),

    #[error("not a normalized 3-cocycle: {0}")]
    NotACocycle(String),

    #[error("d(psi) differs from the restricted 3-cocycle at {triple:?}")]
    NotCompatible { triple: Vec<usize> },

    #[error("algebra pairs belong to different categories")]
    CategoryMismatch,

    #[error("group order {order} exceeds the size limit {limit}")]
    SizeLimitExceeded { order: usize, limit: usize },

    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
