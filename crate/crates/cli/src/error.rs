use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] permpol::Error),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 0 success, 1 i/o, 2 validation, 3 size cap, 4 check mismatch.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => 3,
            CliError::Core(permpol::Error::Io { .. }) | CliError::Io(_) => 1,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Check(_) => 4,
        }
    }
}
