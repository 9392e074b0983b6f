use exact_core::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("k = {k}, n = {n} needs {states} states, above the cap of {cap} (raise it with {env})", env = crate::CAP_ENV)]
    CapExceeded { n: usize, k: u8, states: u128, cap: usize },
    #[error("alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(u8),
    #[error("digit {digit} is not below the alphabet size {k}")]
    InvalidDigit { digit: u8, k: u8 },
    #[error("states differ in shape: (n, k) = ({n1}, {k1}) vs ({n2}, {k2})")]
    ShapeMismatch { n1: usize, k1: u8, n2: usize, k2: u8 },
    #[error("operation needs binary states, got k = {0}")]
    BinaryOnly(u8),
    #[error("invalid coordinate subset {subset:?} for n = {n}")]
    InvalidSubset { subset: Vec<usize>, n: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("cannot parse state {0:?}")]
    Parse(String),
}
