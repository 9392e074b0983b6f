use chain_core::ChainError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("alternation statistics need n >= 2, got {0}")]
    TooShort(usize),
    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },
}

pub(crate) fn binary_only(x: &chain_core::State) -> Result<(), StatsError> {
    if x.k() != 2 {
        return Err(ChainError::BinaryOnly(x.k()).into());
    }
    Ok(())
}
