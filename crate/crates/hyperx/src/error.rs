use thiserror::Error;

/// Errors surfaced by the exact kernel and the certificate machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("mixed radicands in one matrix context: {0} vs {1}")]
    MixedRadicands(u64, u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("input is degenerate: affine hull has dimension {affine_dim}, ambient {ambient}")]
    DegenerateInput { affine_dim: usize, ambient: usize },

    #[error("ambient dimension {0} exceeds the hard cap of {1}")]
    DimensionCap(usize, usize),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("polytope has no {0} representation")]
    MissingRepresentation(&'static str),

    #[error("not a combinatorial ({n},{k})-hypersimplex: {reason}")]
    NotHypersimplex { n: usize, k: usize, reason: String },

    #[error("invalid hypersimplex parameters (n, k) = ({n}, {k})")]
    BadSpec { n: usize, k: usize },

    #[error("facet labeling mismatch: {0}")]
    LabelingMismatch(String),

    #[error("invalid ratio matrix: {0}")]
    BadRatioMatrix(String),

    #[error("covering refers to the wrong matrix: expected {expected}, got {got}")]
    MatrixMismatch { expected: String, got: String },

    #[error("index out of bounds: {0}")]
    IndexOutOfBounds(String),

    #[error("model does not satisfy the formula: {0}")]
    ModelCheckFailed(String),

    #[error("decoded cover is invalid: {0}")]
    InvalidDecodedRectangle(String),

    #[error("solver resource limit exhausted at {0}")]
    Timeout(String),

    #[error("rc search bracket [{lo},{hi}] does not contain the answer")]
    BadBracket { lo: usize, hi: usize },

    #[error("DIMACS parse error: {0}")]
    Dimacs(String),

    #[error("unbounded polyhedron: ray {0:?} escapes to infinity")]
    Unbounded(String),

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
