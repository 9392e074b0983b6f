use chain_core::ChainError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },
    #[error("tau_{j} is singular here: coordinates {j} and {} have equal content", j + 1)]
    Singular { j: usize },
    #[error("inconsistent shape: {0}")]
    Shape(String),
}

pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> SpectralError {
    SpectralError::Range { what, detail: detail.into() }
}
