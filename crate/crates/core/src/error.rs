use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid degeneracy word: {0}")]
    Word(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("category axiom violated: {0}")]
    Category(String),
    #[error("functoriality violated: {0}")]
    Functoriality(String),
    #[error("naturality violated: {0}")]
    Naturality(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("incompatible maps: {0}")]
    Incompatible(String),
    #[error("overlapping classes: {0}")]
    Overlap(String),
    #[error("invalid generator: {0}")]
    Generator(String),
    #[error("not a Kan complex up to dimension {0}")]
    NotKan(usize),
    #[error("no lift found: {0}")]
    NoLift(String),
    #[error("stage mismatch: {0}")]
    StageMismatch(String),
    #[error("document error: {0}")]
    Document(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
