use thiserror::Error;

/// Errors raised by the library. Axiom violations are reported as data by
/// [`crate::validate_axioms`], not through this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} outside the unit interval in `{what}`")]
    UnitInterval { what: &'static str, value: f64 },

    #[error("radius {0} must lie in the open interval (0, 1)")]
    Radius(f64),

    #[error("time scale {0} must be finite and strictly positive")]
    TimeScale(f64),

    #[error("point index {index} out of range for a space of {len} points")]
    Index { index: usize, len: usize },

    #[error("invalid space: {0}")]
    Space(String),

    #[error("invalid measure: {0}")]
    Measure(String),

    #[error("measures live on different spaces")]
    SpaceMismatch,

    #[error("invalid point map: {0}")]
    PointMap(String),

    #[error("brute-force evaluator limited to {cap} support points, got {got}")]
    SupportCap { cap: usize, got: usize },

    #[error("invalid range: {0}")]
    Range(String),

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("extended space failed axiom validation: {0}")]
    Extension(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
