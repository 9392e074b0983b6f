use chain_core::ChainError;
use exact_core::ExactError;
use mixing::MixingError;
use spectral::SpectralError;
use statistics::StatsError;
use thiserror::Error;

/// Raised when a check cannot be run at all. A check that runs and finds a
/// counterexample returns a failing [`crate::CheckResult`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Mixing(#[from] MixingError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{check}: {detail}")]
    Precondition { check: &'static str, detail: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub(crate) fn precondition(check: &'static str, detail: impl Into<String>) -> VerifierError {
    VerifierError::Precondition { check, detail: detail.into() }
}
