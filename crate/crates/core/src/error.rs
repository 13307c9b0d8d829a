use thiserror::Error;

/// Errors raised by the operator, transform and harness layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FracError {
    #[error("non-finite value {value} at node {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("fractional order must be positive and finite, got {0}")]
    InvalidOrder(f64),

    #[error("kernel argument must be positive, got {0}")]
    KernelDomain(f64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown family `{name}`; valid names: {valid}")]
    UnknownFamily { name: String, valid: String },

    #[error("nonpositive value {value} at node {index}; cannot take logarithms")]
    NonPositive { index: usize, value: f64 },

    #[error("transform table entry R[alpha={alpha}, x={x}] = {value} is not positive")]
    NonPositiveEntry { alpha: String, x: String, value: f64 },

    #[error("family output is not real-valued (max |im| = {0})")]
    NotReal(f64),

    #[error("degenerate order set: {0}")]
    DegenerateOrders(String),

    #[error("not additive: h({sum}) = {h_sum} but h({x}) + h({y}) = {h_parts}")]
    NotAdditive {
        x: String,
        y: String,
        sum: String,
        h_sum: f64,
        h_parts: f64,
    },

    #[error("ill-posed extension at {point}: decompositions disagree by {spread}")]
    IllPosedExtension { point: String, spread: f64 },

    #[error("mean {0} of periodic samples is not negligible")]
    NonZeroMean(f64),

    #[error("invalid integrator: {0}")]
    InvalidIntegrator(String),

    #[error("point {0} lies outside the domain")]
    OutOfDomain(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for FracError {
    fn from(e: std::io::Error) -> Self {
        FracError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for FracError {
    fn from(e: serde_json::Error) -> Self {
        FracError::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, FracError>;
