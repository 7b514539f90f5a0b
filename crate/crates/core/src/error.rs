use thiserror::Error;

use crate::lattice::SurfaceSignature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch {
        left: SurfaceSignature,
        right: SurfaceSignature,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero polynomial is not allowed here")]
    ZeroInput,

    #[error("{0} is a unit of the Laurent ring")]
    UnitInput(String),

    #[error("syntax error at byte offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte offset {offset} for surface {signature}")]
    UnknownVariable {
        name: String,
        offset: usize,
        signature: SurfaceSignature,
    },

    #[error("not an element of Aut*(H): {0}")]
    InvalidAutomorphism(String),

    #[error("{0} is not irreducible")]
    NotIrreducible(String),

    #[error("{0} is not self-dual")]
    NotSelfDual(String),

    #[error("{0} is self-dual; its theta homomorphism vanishes identically")]
    SelfDual(String),

    #[error("could not classify {0} at search depth {1}")]
    Inconclusive(String, usize),

    #[error("not a homology cylinder: {0}")]
    NotCylinder(String),

    #[error("augmentation must be +1 or -1, got {0}")]
    Augmentation(String),

    #[error("invalid gluing: {0}")]
    InvalidGluing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("malformed cylinder descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
