use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the enumeration limit {limit}")]
    BoundExceeded { what: &'static str, value: u128, limit: u128 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid barred permutation: {0}")]
    InvalidBarred(String),

    #[error("invalid set composition: {0}")]
    InvalidComposition(String),

    #[error("poset element {element} is outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("duplicate cover relation {0} < {1}")]
    DuplicateCover(usize, usize),

    #[error("cover relations contain a cycle through {0}")]
    CycleDetected(usize),

    #[error("cover {0} < {1} is implied by transitivity")]
    RedundantCover(usize, usize),

    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),

    #[error("facet {dominated} is contained in facet {by}")]
    DominatedFacet { dominated: String, by: String },

    #[error("complex has {0} vertices; at most 128 are supported")]
    TooManyVertices(usize),

    #[error("complex is not pure: facets have sizes {0:?}")]
    NotPure(Vec<usize>),

    #[error("invalid interval partition: {0}")]
    InvalidPartition(String),

    #[error("involution law violated: {0}")]
    InvolutionViolation(String),

    #[error("{what} mismatch at index {index}: expected {expected}, found {found}")]
    FormulaMismatch { what: &'static str, index: usize, expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
