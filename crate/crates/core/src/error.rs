use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("denominator vanishes at the evaluation point")]
    Pole,

    #[error("division left a nonzero remainder")]
    InexactDivision,

    #[error("braid parse error: {0}")]
    Parse(String),

    #[error("closure is a link with {components} components, not a knot")]
    LinkNotKnot { components: usize },

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("state space too large: {needed} exceeds limit {limit}")]
    ResourceLimit { needed: u128, limit: u128 },

    #[error("need coefficient index {needed} but only {available} are available")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("evaluation hits an exact zero factor")]
    ExactZero,

    #[error("recurrence is not integral (leading coefficient 1, integer coefficients)")]
    NotIntegral,

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("convention calibration failed: {0}")]
    Convention(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
