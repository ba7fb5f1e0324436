use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for a group of rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("expected {expected} generators, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("element {element} does not belong to {group}")]
    NotAMember { element: String, group: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("structure mismatch: {0}")]
    Structure(String),
    #[error("underdetermined: {0}")]
    Underdetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
