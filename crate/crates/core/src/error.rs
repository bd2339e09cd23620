use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("not flippable: {0}")]
    NotFlippable(String),
    #[error("not a lattice: no {kind} for elements {x} and {y}")]
    NotALattice { kind: &'static str, x: usize, y: usize },
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("type {0} needs --allow-large")]
    LargeType(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("empty subword complex")]
    EmptyComplex,
    #[error("invalid facet: {0}")]
    InvalidFacet(String),
    #[error("word is not alternating")]
    NotAlternating,
    #[error("word is not sorting")]
    NotSorting,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("output error: {1}")]
    Io(std::io::ErrorKind, String),
}

pub type Result<T> = std::result::Result<T, Error>;
