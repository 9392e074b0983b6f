use std::path::PathBuf;

use chain_core::ChainError;
use mixing::MixingError;
use spectral::SpectralError;
use statistics::StatsError;
use thiserror::Error;
use verifier::VerifierError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("cannot write {path}: {source}")]
    Unwritable { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Unwritable { .. } => 4,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Chain(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<MixingError> for CliError {
    fn from(e: MixingError) -> Self {
        match e {
            MixingError::Chain(c) => c.into(),
            MixingError::Spectral(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::Chain(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifierError> for CliError {
    fn from(e: VerifierError) -> Self {
        match e {
            VerifierError::Chain(c) => c.into(),
            VerifierError::Spectral(s) => s.into(),
            VerifierError::Mixing(m) => m.into(),
            VerifierError::Stats(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_cap_errors_keep_their_exit_code() {
        let cap = ChainError::CapExceeded { n: 13, k: 2, states: 8192, cap: 4096 };
        let e: CliError = MixingError::Spectral(SpectralError::Chain(cap)).into();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("4096"));
        let e: CliError = StatsError::TooShort(1).into();
        assert_eq!(e.exit_code(), 2);
    }
}
