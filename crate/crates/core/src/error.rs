use thiserror::Error;

/// Errors produced by the spline, assembly and solver layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {x} lies outside the basic interval [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("knot vectors are not nested: {0}")]
    NotNested(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("level {level} out of range 1..={levels}")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("matrix is singular to working precision ({0})")]
    Singular(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("eigen/singular value iteration did not converge")]
    NoConvergence,

    #[error("boundary face {face} is Dirichlet but carries no data")]
    MissingBoundaryData { face: usize },

    #[error("coefficient function returned a non-finite value at {0:?}")]
    NonFiniteCoefficient(Vec<f64>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
