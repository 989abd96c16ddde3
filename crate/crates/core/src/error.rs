use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: u32, n: u32 },

    #[error("facet list is empty")]
    EmptyFacets,

    #[error("duplicate vertex {0} inside a simplex")]
    DuplicateVertex(u32),

    #[error("empty simplex")]
    EmptySimplex,

    #[error("need n >= d + 1, got n = {n}, d = {d}")]
    TooFewVertices { n: u32, d: usize },

    #[error("simplex {0} is not a face of the complex")]
    NotAFace(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("complex is not pure; sub-top maximal faces {0} will not be measured")]
    NotPure(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("duplicate matrix label: {0}")]
    DuplicateLabel(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("unsupported dimension d = {0} for this operation")]
    UnsupportedDimension(usize),

    #[error("shifting unstable across seeds after {0} attempts")]
    UnstableShift(usize),

    #[error("malformed certificate trace: {0}")]
    MalformedTrace(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
