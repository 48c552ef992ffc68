use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported region variant for this operation: {0}")]
    UnsupportedVariant(String),

    #[error("degenerate region: {0}")]
    DegenerateRegion(String),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Gram matrix lost positive definiteness at the named degree.
    #[error("precision exhausted at degree {degree} ({bits} bits)")]
    PrecisionExhausted { degree: usize, bits: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid Verblunsky coefficient at index {index}: modulus is not below 1")]
    InvalidCoefficient { index: usize },

    #[error("polynomial is not a monic orthogonal polynomial on the unit circle (step {step})")]
    NotOpuc { step: usize },

    #[error("inconsistent computation: {0}")]
    Inconsistent(String),

    #[error("invalid conformal map: {0}")]
    InvalidMap(String),

    #[error("normalization failed: measured mass {measured}")]
    Normalization { measured: f64 },

    #[error("degenerate trial function: {0}")]
    DegenerateTrial(String),

    #[error("value is not representable in exact arithmetic: {0}")]
    NotExact(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
