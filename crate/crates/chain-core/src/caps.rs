use crate::error::ChainError;

/// Environment variable overriding the state-space cap for every alphabet.
pub const CAP_ENV: &str = "BURNSIDE_LAB_MAX_STATES";

/// Largest state spaces dense exact kernels are built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateCap {
    pub binary: usize,
    pub alphabet: usize,
}

impl Default for StateCap {
    fn default() -> Self {
        Self { binary: 1 << 12, alphabet: 3usize.pow(7) }
    }
}

impl StateCap {
    /// Defaults, overridden by [`CAP_ENV`] when it holds a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(c) if c > 0 => Self { binary: c, alphabet: c },
            _ => Self::default(),
        }
    }

    pub fn limit(&self, k: u8) -> usize {
        if k == 2 {
            self.binary
        } else {
            self.alphabet
        }
    }

    /// Returns `k^n` when within the cap.
    pub fn check(&self, n: usize, k: u8) -> Result<usize, ChainError> {
        let cap = self.limit(k);
        let states = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if states > cap as u128 {
            return Err(ChainError::CapExceeded { n, k, states, cap });
        }
        Ok(states as usize)
    }
}
