use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("set maps do not compose: {0}")]
    SizeMismatch(String),

    #[error("operation needs a finite basis enumeration, but the algebra is infinite-dimensional")]
    InfiniteDimensional,

    #[error("operation requires a cocommutative Hopf algebra")]
    NotCocommutative,

    #[error("tensor degree {degree} exceeds truncation {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },

    #[error("arity {arity} exceeds cap {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },

    #[error("characteristic {p} divides {n}!")]
    CharacteristicDividesOrder { p: u64, n: usize },

    #[error("module has no canonical identification for the id rule")]
    NoCanonicalIdentification,

    #[error("not a morphism of interconnected modules: {0}")]
    NotIcMorphism(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
