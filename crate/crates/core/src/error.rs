use thiserror::Error;

/// Errors produced by graph ingestion and the curvature analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate edge {u} -- {v}")]
    DuplicateEdge { line: usize, u: String, v: String },

    #[error("line {line}: loop at vertex {label}")]
    Loop { line: usize, label: String },

    #[error("line {line}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: String },

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("vertices {x} and {y} are not adjacent")]
    NotAdjacent { x: usize, y: usize },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("vertex {vertex} has degree {degree}, at least {required} is required")]
    DegreeTooSmall {
        vertex: usize,
        degree: usize,
        required: usize,
    },

    #[error("vertices {x} and {y} lie in different connected components")]
    CrossComponent { x: usize, y: usize },

    #[error("curvature is undefined for identical vertices ({0})")]
    SameVertex(usize),

    #[error("measure has no atoms")]
    EmptyMeasure,

    #[error("joint support of {size} vertices exceeds the enumeration limit of {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("parameter k must be positive, got {0}")]
    NonPositiveK(String),

    #[error("dimension parameter must be at least 1, got {0}")]
    InvalidDimension(String),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("function domain does not match the 2-ball of vertex {0}")]
    DomainMismatch(usize),

    #[error("operation requires an unweighted graph")]
    WeightedUnsupported,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("integer overflow while scaling masses to a common denominator")]
    ScaleOverflow,

    #[error("invalid family spec '{spec}': {message}")]
    FamilySpec { spec: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
