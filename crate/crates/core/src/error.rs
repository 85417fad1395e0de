use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("complexes on more than {max} vertices are not supported (got {m})")]
    TooManyVertices { m: usize, max: usize },

    #[error("{0} is not a face of the complex")]
    NotAFace(VertexSet),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(VertexSet),

    #[error("the empty face cannot be subdivided")]
    EmptyFace,

    #[error("the full simplex has no dual complex")]
    FullSimplex,

    #[error("vertex map is not simplicial: face {face} maps to non-face {image}")]
    NotSimplicial { face: VertexSet, image: VertexSet },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field coefficients required, got the integers")]
    FieldRequired,

    #[error("element is not a cocycle")]
    NotACocycle,

    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(&'static str),

    #[error("undefined Massey product: {0} is not a coboundary")]
    UndefinedMassey(MasseyObstruction),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Which of the two defining products fails to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MasseyObstruction {
    FirstPair,
    SecondPair,
}

impl std::fmt::Display for MasseyObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MasseyObstruction::FirstPair => f.write_str("a1*a2"),
            MasseyObstruction::SecondPair => f.write_str("a2*a3"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
