use thiserror::Error;

/// Errors raised by the spanner toolkit.
///
/// Everything here is a usage error: bad input data or parameters. Internal
/// invariant violations panic instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpannerError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("point {index} has a non-finite coordinate")]
    NonFiniteCoordinate { index: usize },

    #[error("points {first} and {second} are identical")]
    DuplicatePoint { first: usize, second: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),

    #[error("stretch factor must be greater than 1, got {0}")]
    InvalidStretch(f64),

    #[error("separation constant must be positive, got {0}")]
    InvalidSeparation(f64),

    #[error("theta graph needs at least 2 cones, got {0}")]
    InvalidConeCount(usize),

    #[error("theta graph is only implemented in the plane (d = 2), got d = {0}")]
    UnsupportedDimension(usize),

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, SpannerError>;
