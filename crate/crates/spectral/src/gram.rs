//! Inner products among subset vectors and the Johnson scheme spectrum of
//! their Gram matrix.

use exact_core::{binomial, BigInt, Rational};
use num_traits::Zero;

/// A normalized inner product together with why it vanished, if it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramEntry {
    pub value: Rational,
    pub orthogonal_by_grading: bool,
}

/// `⟨f̄_S, f̄_{S'}⟩ = 1 / C(2m + 1 - t, m + 1)` for `|S| = |S'| = m` and
/// `t = |S ∩ S'|`; subsets of different sizes are orthogonal.
pub fn gram_normalized(s: u64, s2: u64) -> GramEntry {
    let (m, m2) = (s.count_ones() as u64, s2.count_ones() as u64);
    if m != m2 {
        return GramEntry { value: Rational::zero(), orthogonal_by_grading: true };
    }
    let t = u64::from((s & s2).count_ones());
    GramEntry {
        value: Rational::new(BigInt::from(1), binomial(2 * m + 1 - t, m as i64 + 1)),
        orthogonal_by_grading: false,
    }
}

/// `⟨f_S, f_S⟩_π = C(2m, m) / (m + 1)`.
pub fn self_inner_product(m: usize) -> Rational {
    Rational::new(binomial(2 * m as u64, m as i64), BigInt::from(m + 1))
}

/// Eigenvalue on the `t`-th Johnson eigenspace of the Gram matrix of
/// normalized `m`-subset vectors in `n` coordinates:
/// `λ_t = Σ_ℓ g(ℓ) Σ_{i ≤ t} (-1)^{t-i} C(m-i, ℓ-i) C(n-m+i-t, m-ℓ+i-t) C(t, i)`,
/// where `g(ℓ)` is the normalized inner product at overlap `ℓ`.
pub fn johnson_eigenvalue(n: usize, m: usize, t: usize) -> Rational {
    let b = |a: i64, c: i64| if a < 0 { BigInt::zero() } else { binomial(a as u64, c) };
    let (n, m, t) = (n as i64, m as i64, t as i64);
    let mut total = Rational::zero();
    for l in 0..=m {
        let g = Rational::new(BigInt::from(1), binomial((2 * m + 1 - l) as u64, m + 1));
        let mut inner = BigInt::zero();
        for i in 0..=t {
            let term = b(m - i, l - i) * b(n - m + i - t, m - l + i - t) * b(t, i);
            if (t - i) % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += g * Rational::from_integer(inner);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::pi_inner;
    use crate::subset::{f_subset_vector, subsets_of_size};
    use exact_core::{rat_int, ratio};

    #[test]
    fn gram_examples() {
        assert_eq!(gram_normalized(0b0011, 0b0011).value, ratio(1, 1));
        assert_eq!(gram_normalized(0b0011, 0b0110).value, ratio(1, 4));
        assert_eq!(gram_normalized(0b0011, 0b1100).value, ratio(1, 10));
        let e = gram_normalized(0b0011, 0b0111);
        assert!(e.orthogonal_by_grading && e.value.is_zero());
        assert_eq!(self_inner_product(2), ratio(2, 1));
    }

    #[test]
    fn gram_formula_matches_direct_inner_products() {
        for n in 1..=6usize {
            for m in 0..=n {
                let subsets = subsets_of_size(n, m);
                let norm = self_inner_product(m);
                for &s in &subsets {
                    let u: Vec<Rational> = f_subset_vector(n, s).into_iter().map(rat_int).collect();
                    assert_eq!(pi_inner(n, &u, &u), norm);
                    for &s2 in &subsets {
                        let w: Vec<Rational> = f_subset_vector(n, s2).into_iter().map(rat_int).collect();
                        assert_eq!(pi_inner(n, &u, &w) / &norm, gram_normalized(s, s2).value, "n={n} S={s:b} S'={s2:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_eigenvalue_is_the_row_sum() {
        for (n, m) in [(4usize, 2usize), (5, 2), (6, 3)] {
            let subsets = subsets_of_size(n, m);
            let row: Rational = subsets.iter().map(|&s| gram_normalized(subsets[0], s).value).sum();
            assert_eq!(johnson_eigenvalue(n, m, 0), row);
        }
    }
}
