use chain_core::ChainError;
use spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixingError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(
        "the eigenvalue sum needs at least one step: at 0 steps the definition gives 2^n - 1, \
         while the sum over nonzero eigenvalues gives 2^(n-1) - 1 (0^0 is ambiguous)"
    )]
    ZeroSteps,
    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },
}

pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> MixingError {
    MixingError::Range { what, detail: detail.into() }
}
