use std::path::PathBuf;

use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed model file {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("invalid model: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis dimension {requested} exceeds cap {cap}")]
    DimensionCap { requested: u128, cap: usize },

    #[error("permutation group S_{n} exceeds the enumeration cap S_{cap}")]
    GroupCap { n: usize, cap: usize },

    #[error("reference projection needs {work} vector operations, above cap {cap}")]
    ComputeCap { work: u128, cap: u128 },

    #[error("basis is not closed under molecule permutations")]
    NotPermutationClosed,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace was built on a different basis than the matrix")]
    SourceMismatch,

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("state vector norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
}

impl Error {
    /// True for errors raised by the size guards rather than by bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::DimensionCap { .. } | Error::GroupCap { .. } | Error::ComputeCap { .. }
        )
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
