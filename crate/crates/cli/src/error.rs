use fock_core::FockError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Fock(#[from] FockError),
}

impl CliError {
    pub fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    /// 1 for bad input, 2 when the mathematics refuses the operator or a
    /// numerical loop gives up, 4 for an internal contradiction.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ConfigInvalid(_) | CliError::Io { .. } => 1,
            CliError::Fock(e) => match e {
                FockError::InvalidInput(_) | FockError::InsufficientCoefficients { .. } => 1,
                FockError::InternalInconsistency(_) => 4,
                FockError::HypothesisViolated(_)
                | FockError::IndeterminateLiminal(_)
                | FockError::NonConvergent(_)
                | FockError::RadiusExceeded { .. }
                | FockError::WrongMultiplierKind(_)
                | FockError::DegenerateLambda(_)
                | FockError::NoFixedPoint => 2,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
