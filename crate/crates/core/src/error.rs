use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not normalized (|v| - 1 = {0:e})")]
    NotNormalized(f64),

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("basis is not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: String },

    #[error("expected {expected} vectors, found {found}")]
    WrongVectorCount { expected: usize, found: usize },

    #[error("matrix is not a complex Hadamard matrix (deviation {0:e})")]
    NotHadamard(f64),

    #[error("invalid seed vector: {0}")]
    InvalidSeed(String),

    #[error("operator is not of order 3 up to phase")]
    NotOrderThree,

    #[error("linear system is singular")]
    SingularSystem,

    #[error("degenerate line: {0}")]
    DegenerateLine(String),

    #[error("point is not on the curve (residual {0:e})")]
    NotOnCurve(f64),

    #[error("parameter t is infinite")]
    InfiniteParameter,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed matrix file: {0}")]
    Format(String),
}
