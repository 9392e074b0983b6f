//! Binomials, factorials and rising factorials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in machine integers. Panics on overflow, which for the sizes
/// used here (n in the low hundreds) does not happen for k near the edges;
/// callers with large central binomials should use [`binomial`].
pub fn binomial_u128(n: u64, k: i64) -> u128 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(u128::from(n - i))
            .expect("binomial_u128 overflow")
            / u128::from(i + 1);
    }
    acc
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p as i64);
    }
    acc
}

/// Rising factorial `(a)_j = a (a+1) ... (a+j-1)`, with `(a)_0 = 1`.
pub fn rising_factorial(a: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..j {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(5, 7), BigInt::from(0));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial_u128(60, 30), 118264581564861424);
    }

    #[test]
    fn binomial_matches_pascal_rule() {
        for n in 1..40u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
            }
        }
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(rising_factorial(&ratio(7, 3), 0), ratio(1, 1));
        assert_eq!(rising_factorial(&ratio(1, 2), 3), ratio(15, 8));
    }

    // (1/2)_m = (2m)! / (4^m m!), the half-integer cycle generating identity.
    #[test]
    fn half_rising_factorial_identity() {
        for m in 0..12u64 {
            let rhs = BigRational::new(
                factorial(2 * m),
                BigInt::from(4).pow(m as u32) * factorial(m),
            );
            assert_eq!(rising_factorial(&ratio(1, 2), m), rhs);
        }
    }

    #[test]
    fn multinomial_counts_words() {
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[]), BigInt::from(1));
    }
}
