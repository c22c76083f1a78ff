use thiserror::Error;

/// Errors raised by the operator-theory routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("|z| = {modulus} exceeds the certified radius {radius} of the truncated series")]
    RadiusExceeded { modulus: f64, radius: f64 },

    #[error("need at least {needed} nonzero Taylor coefficients, found {found}")]
    InsufficientCoefficients { needed: usize, found: usize },

    #[error("adaptive loop exceeded its budget without certification: {0}")]
    NonConvergent(String),

    #[error("operation not available for this multiplier kind: {0}")]
    WrongMultiplierKind(String),

    #[error("degenerate dilation lambda = {0}")]
    DegenerateLambda(String),

    #[error("symbol has no fixed point (lambda = 1, a != 0)")]
    NoFixedPoint,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("liminal case could not be certified numerically: {0}")]
    IndeterminateLiminal(String),

    #[error("no proof case matches the classification: {0}")]
    InternalInconsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, FockError>;
