use thiserror::Error;

use crate::valuations::Contradiction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("vector has zero length or non-finite components")]
    DegenerateVector,

    #[error("rays are collinear")]
    Collinear,

    #[error("rays are not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("context already complete: {given} rays in dimension {dimension}")]
    ContextFull { given: usize, dimension: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("malformed diagram document: {0}")]
    Malformed(String),

    #[error("duplicate atom id `{0}`")]
    DuplicateAtom(String),

    #[error("block size: {label} has {found} atoms, expected {expected}")]
    BlockSize {
        label: String,
        found: usize,
        expected: usize,
    },

    #[error("unknown atom id `{0}`")]
    UnknownAtom(String),

    #[error("vector of atom `{id}` has length {found}, expected {expected}")]
    VectorLength {
        id: String,
        found: usize,
        expected: usize,
    },

    #[error("Greechie legality: blocks {first} and {second} share {shared} atoms")]
    Legality {
        first: String,
        second: String,
        shared: usize,
    },

    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },

    #[error("{rays} rays cannot span a context of dimension {dimension}")]
    TooFewRays { rays: usize, dimension: usize },

    #[error("atom `{0}` has no coordinates")]
    MissingCoordinates(String),

    #[error("star size must be at least 1, got {0}")]
    InvalidStarSize(usize),

    #[error("contradictory premises: {0}")]
    Contradiction(Contradiction),

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
}
