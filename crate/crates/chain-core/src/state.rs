use std::fmt;

use crate::error::ChainError;

/// A point of `C_k^n`: `n` digits in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    k: u8,
    digits: Vec<u8>,
}

impl State {
    pub fn new(k: u8, digits: Vec<u8>) -> Result<Self, ChainError> {
        if k < 2 {
            return Err(ChainError::InvalidAlphabet(k));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= k) {
            return Err(ChainError::InvalidDigit { digit: d, k });
        }
        Ok(Self { k, digits })
    }

    pub(crate) fn from_digits_unchecked(k: u8, digits: Vec<u8>) -> Self {
        Self { k, digits }
    }

    pub fn zeros(n: usize, k: u8) -> Self {
        Self { k, digits: vec![0; n] }
    }

    /// Binary unit vector with coordinate `j` (1-based) set.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut digits = vec![0; n];
        digits[j - 1] = 1;
        Self { k: 2, digits }
    }

    /// Binary state with `⌈n/2⌉` zeros followed by `⌊n/2⌋` ones.
    pub fn half(n: usize) -> Self {
        let digits = (0..n).map(|i| u8::from(i >= n - n / 2)).collect();
        Self { k: 2, digits }
    }

    /// Binary state with the last `ones` coordinates set: a representative
    /// of the orbit of `ones`-weight strings.
    pub fn orbit_representative(n: usize, ones: usize) -> Self {
        let digits = (0..n).map(|i| u8::from(i >= n - ones)).collect();
        Self { k: 2, digits }
    }

    /// Parses a digit string such as `"0110"`; character `i` is coordinate `i + 1`.
    pub fn parse(s: &str, k: u8) -> Result<Self, ChainError> {
        let digits = s
            .trim()
            .chars()
            .map(|c| c.to_digit(36).map(|d| d as u8).ok_or_else(|| ChainError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if digits.is_empty() {
            return Err(ChainError::Parse(s.to_string()));
        }
        Self::new(k, digits)
    }

    pub fn from_index(mut index: usize, n: usize, k: u8) -> Self {
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            digits.push((index % k as usize) as u8);
            index /= k as usize;
        }
        Self { k, digits }
    }

    pub fn index(&self) -> usize {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.k as usize + d as usize)
    }

    pub fn n(&self) -> usize {
        self.digits.len()
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Number of coordinates equal to one, `|x|` for binary states.
    pub fn ones(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 1).count()
    }

    /// Value counts `(n_0, ..., n_{k-1})`, which label the orbit.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.k as usize];
        for &d in &self.digits {
            c[d as usize] += 1;
        }
        c
    }

    /// The sorted state with value counts `counts` (`counts[a]` copies of
    /// digit `a`), a canonical representative of that orbit.
    pub fn from_counts(counts: &[usize]) -> Result<Self, ChainError> {
        let k = u8::try_from(counts.len()).map_err(|_| ChainError::InvalidAlphabet(u8::MAX))?;
        if k < 2 {
            return Err(ChainError::InvalidAlphabet(k));
        }
        let digits = counts.iter().enumerate().flat_map(|(a, &c)| std::iter::repeat_n(a as u8, c)).collect();
        Ok(Self { k, digits })
    }

    /// Digit-wise reflection `d ↦ k - 1 - d` (bit flip for binary states).
    pub fn complement(&self) -> Self {
        Self { k: self.k, digits: self.digits.iter().map(|&d| self.k - 1 - d).collect() }
    }

    /// `y_i = x_{sigma(i)}` for a permutation given as 0-based images.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        Self { k: self.k, digits: sigma.iter().map(|&j| self.digits[j]).collect() }
    }

    /// Restriction to the 1-based coordinates in `subset`, in the given order.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        Self { k: self.k, digits: subset.iter().map(|&j| self.digits[j - 1]).collect() }
    }

    pub(crate) fn same_shape(&self, other: &State) -> Result<(), ChainError> {
        if self.n() != other.n() || self.k != other.k {
            return Err(ChainError::ShapeMismatch { n1: self.n(), k1: self.k, n2: other.n(), k2: other.k });
        }
        Ok(())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", char::from_digit(u32::from(d), 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

/// All states of `C_k^n` in index order.
pub fn all_states(n: usize, k: u8) -> impl Iterator<Item = State> {
    let total = (k as usize).pow(n as u32);
    (0..total).map(move |i| State::from_index(i, n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_little_endian() {
        let x = State::parse("001", 2).unwrap();
        assert_eq!(x.index(), 4);
        assert_eq!(State::from_index(4, 3, 2), x);
        let y = State::parse("21", 3).unwrap();
        assert_eq!(y.index(), 2 + 3);
        for i in 0..81 {
            assert_eq!(State::from_index(i, 4, 3).index(), i);
        }
    }

    #[test]
    fn parse_and_display() {
        let x = State::parse("011011", 2).unwrap();
        assert_eq!(x.to_string(), "011011");
        assert_eq!(x.ones(), 4);
        assert!(State::parse("012", 2).is_err());
        assert!(State::parse("", 2).is_err());
        assert!(State::new(1, vec![0]).is_err());
    }

    #[test]
    fn named_states() {
        assert_eq!(State::unit(3, 3).to_string(), "001");
        assert_eq!(State::half(5).to_string(), "00011");
        assert_eq!(State::orbit_representative(4, 1).to_string(), "0001");
        assert_eq!(State::parse("0120", 3).unwrap().complement().to_string(), "2102");
        assert_eq!(State::parse("0120", 3).unwrap().counts(), vec![2, 1, 1]);
    }

    #[test]
    fn restriction_and_permutation() {
        let x = State::parse("0110", 2).unwrap();
        assert_eq!(x.restrict(&[1, 3]).to_string(), "01");
        assert_eq!(x.permuted(&[3, 2, 1, 0]).to_string(), "0110");
        assert_eq!(x.permuted(&[1, 0, 2, 3]).to_string(), "1010");
    }
}
