use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        source: helly_core::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] helly_core::Error),
    #[error("{0}")]
    Disagreement(String),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 1 for parse and validation problems, 2 when an
    /// algorithm's contract failed on the given input.
    pub fn exit_code(&self) -> i32 {
        use helly_core::Error as E;
        match self {
            CliError::Core(
                E::GateNotFound { .. }
                | E::PseudoGateNotFound { .. }
                | E::StepBudgetExceeded { .. }
                | E::SamplingFailure { .. },
            )
            | CliError::Disagreement(_) => 2,
            _ => 1,
        }
    }
}
