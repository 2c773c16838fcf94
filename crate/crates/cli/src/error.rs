use pade_core::PadeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Arg(String),
    #[error(transparent)]
    Compute(#[from] PadeError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad arguments (including engine precondition violations), 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Arg(_) => 2,
            CliError::Compute(
                PadeError::InvalidArgument(_) | PadeError::InvalidDescriptor(_) | PadeError::Degree(_),
            ) => 2,
            CliError::Compute(_) | CliError::Io(_) => 3,
        }
    }
}
