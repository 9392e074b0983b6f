//! Closed forms for single kernel entries.
//!
//! Write `n_ab` for the number of coordinates with `x_i = a`, `y_i = b`.
//! The permutations fixing both `x` and `y` form `Π S_{n_ab}`, and summing
//! `k^{-cycles}` over a symmetric group `S_m` gives the rising factorial
//! `(1/k)_m`. Dividing by `|G_x| = Π_a n_a!` yields
//!
//! ```text
//! K(x, y) = Π_a (1 / n_a!) Π_b (1/k)_{n_ab}
//! ```
//!
//! which for `k = 2` is the product of central binomials over `4^n`.

use exact_core::{binomial, factorial, rising_factorial, BigInt, Rational};
use num_traits::One;

use crate::error::ChainError;
use crate::state::State;

/// The `k x k` table of pair counts `n_ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCounts {
    k: usize,
    table: Vec<usize>,
}

impl PairCounts {
    pub fn new(x: &State, y: &State) -> Result<Self, ChainError> {
        x.same_shape(y)?;
        let k = x.k() as usize;
        let mut table = vec![0; k * k];
        for (&a, &b) in x.digits().iter().zip(y.digits()) {
            table[a as usize * k + b as usize] += 1;
        }
        Ok(Self { k, table })
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[a * self.k + b]
    }

    /// Row total `n_a·`.
    pub fn row_total(&self, a: usize) -> usize {
        (0..self.k).map(|b| self.get(a, b)).sum()
    }

    pub fn total(&self) -> usize {
        self.table.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Binary closed form
/// `C(2n00,n00) C(2n01,n01) C(2n10,n10) C(2n11,n11) / (4^n C(n00+n01,n00) C(n10+n11,n10))`.
pub fn kernel_entry_binary(x: &State, y: &State) -> Result<Rational, ChainError> {
    if x.k() != 2 {
        return Err(ChainError::BinaryOnly(x.k()));
    }
    let c = PairCounts::new(x, y)?;
    let central = |m: usize| binomial(2 * m as u64, m as i64);
    let (n00, n01, n10, n11) = (c.get(0, 0), c.get(0, 1), c.get(1, 0), c.get(1, 1));
    let num = central(n00) * central(n01) * central(n10) * central(n11);
    let den = BigInt::from(4).pow(x.n() as u32)
        * binomial((n00 + n01) as u64, n00 as i64)
        * binomial((n10 + n11) as u64, n10 as i64);
    Ok(Rational::new(num, den))
}

/// General alphabet closed form `Π_a (1/n_a!) Π_b (1/k)_{n_ab}`.
pub fn kernel_entry_alphabet(x: &State, y: &State) -> Result<Rational, ChainError> {
    let c = PairCounts::new(x, y)?;
    let k = c.k();
    let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
    let mut acc = Rational::one();
    for a in 0..k {
        acc /= Rational::from_integer(factorial(c.row_total(a) as u64));
        for b in 0..k {
            acc *= rising_factorial(&inv_k, c.get(a, b) as u64);
        }
    }
    Ok(acc)
}

/// Dispatches to the binary form for `k = 2` and the general form otherwise.
pub fn kernel_entry(x: &State, y: &State) -> Result<Rational, ChainError> {
    if x.k() == 2 {
        kernel_entry_binary(x, y)
    } else {
        kernel_entry_alphabet(x, y)
    }
}

/// Common denominator `k^n n!` of every entry of the `(n, k)` kernel, or
/// `None` if it does not fit 63 bits.
pub fn kernel_denominator(n: usize, k: u8) -> Option<i64> {
    let mut d: i64 = 1;
    for i in 1..=n as i64 {
        d = d.checked_mul(i)?.checked_mul(i64::from(k))?;
    }
    Some(d)
}

/// `K(x, y) · k^n n!`, an integer: the multinomial `n! / Π n_a!` times
/// `Π_{a,b} Π_{i < n_ab} (1 + i k)`.
pub fn scaled_entry(c: &PairCounts) -> Option<i64> {
    let k = c.k();
    let mut acc: u128 = 1;
    let mut seen: u128 = 0;
    for a in 0..k {
        for j in 1..=c.row_total(a) as u128 {
            seen += 1;
            acc = acc.checked_mul(seen)? / j;
        }
    }
    for a in 0..k {
        for b in 0..k {
            for i in 0..c.get(a, b) as u128 {
                acc = acc.checked_mul(1 + i * k as u128)?;
            }
        }
    }
    i64::try_from(acc).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    fn st(s: &str, k: u8) -> State {
        State::parse(s, k).unwrap()
    }

    #[test]
    fn binary_examples() {
        assert_eq!(kernel_entry_binary(&st("0", 2), &st("0", 2)).unwrap(), ratio(1, 2));
        assert_eq!(kernel_entry_binary(&st("00", 2), &st("00", 2)).unwrap(), ratio(3, 8));
        assert_eq!(kernel_entry_binary(&st("01", 2), &st("11", 2)).unwrap(), ratio(1, 4));
    }

    #[test]
    fn alphabet_examples() {
        for x in ["0", "1", "2"] {
            for y in ["0", "1", "2"] {
                assert_eq!(kernel_entry_alphabet(&st(x, 3), &st(y, 3)).unwrap(), ratio(1, 3));
            }
        }
        assert_eq!(kernel_entry_alphabet(&st("00", 3), &st("11", 3)).unwrap(), ratio(2, 9));
        assert_eq!(kernel_entry_alphabet(&st("00", 3), &st("12", 3)).unwrap(), ratio(1, 18));
    }

    #[test]
    fn general_form_reduces_to_binary_form() {
        for n in 1..=6 {
            for i in 0..(1usize << n) {
                for j in 0..(1usize << n) {
                    let (x, y) = (State::from_index(i, n, 2), State::from_index(j, n, 2));
                    assert_eq!(kernel_entry_binary(&x, &y).unwrap(), kernel_entry_alphabet(&x, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn scaled_entries_are_exact_multiples() {
        for (n, k) in [(3usize, 2u8), (4, 3), (3, 4)] {
            let d = kernel_denominator(n, k).unwrap();
            let total = (k as usize).pow(n as u32);
            for i in 0..total {
                for j in 0..total {
                    let (x, y) = (State::from_index(i, n, k), State::from_index(j, n, k));
                    let c = PairCounts::new(&x, &y).unwrap();
                    let scaled = Rational::new(scaled_entry(&c).unwrap().into(), d.into());
                    assert_eq!(scaled, kernel_entry_alphabet(&x, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(kernel_entry_binary(&st("01", 2), &st("011", 2)).is_err());
        assert!(kernel_entry_binary(&st("01", 3), &st("01", 3)).is_err());
        assert!(kernel_entry_alphabet(&st("01", 3), &st("01", 2)).is_err());
    }
}
