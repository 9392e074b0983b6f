//! The Gram matrix of normalized subset vectors of one size, and the
//! Johnson scheme spectrum it inherits.

use exact_core::{binomial, rational_rank, Matrix, Rational};
use num_traits::{One, ToPrimitive, Zero};
use spectral::{gram_normalized, johnson_eigenvalue, subsets_of_size};

use crate::eigen::mask_string;
use crate::error::{precondition, VerifierError};
use crate::result::{CheckResult, Checker};

/// Largest Gram matrix built, `C(10,5) = 252` rows.
pub const JOHNSON_MAX_ROWS: usize = 252;

fn choose(n: usize, t: usize) -> i64 {
    binomial(n as u64, t as i64).to_i64().expect("small binomial")
}

/// `C(n,t) - C(n,t-1)`.
pub fn johnson_multiplicity(n: usize, t: usize) -> i64 {
    choose(n, t) - if t == 0 { 0 } else { choose(n, t - 1) }
}

/// Eigenvalues `λ_t` for `t ≤ min(m, n-m)` with multiplicities, equal
/// values merged.
pub fn johnson_spectrum(n: usize, m: usize) -> Vec<(Rational, i64)> {
    let mut out: Vec<(Rational, i64)> = Vec::new();
    for t in 0..=m.min(n - m) {
        let lam = johnson_eigenvalue(n, m, t);
        let mult = johnson_multiplicity(n, t);
        match out.iter_mut().find(|(l, _)| *l == lam) {
            Some(e) => e.1 += mult,
            None => out.push((lam, mult)),
        }
    }
    out
}

pub fn gram_matrix(n: usize, m: usize) -> (Vec<u64>, Matrix<Rational>) {
    let subs = subsets_of_size(n, m);
    let g = Matrix::from_fn(subs.len(), subs.len(), |i, j| gram_normalized(subs[i], subs[j]).value);
    (subs, g)
}

pub fn verify_johnson_gram(n: usize, m: usize) -> Result<CheckResult, VerifierError> {
    if m > n || n > 63 {
        return Err(precondition("johnson-gram", format!("needs m <= n, got n={n}, m={m}")));
    }
    let size = choose(n, m) as usize;
    if size > JOHNSON_MAX_ROWS {
        return Err(precondition("johnson-gram", format!("C({n},{m}) = {size} rows exceeds {JOHNSON_MAX_ROWS}")));
    }
    let mut c = Checker::new("johnson-gram").param("n", n).param("m", m);
    let (subs, g) = gram_matrix(n, m);

    let symmetric = (0..size).all(|i| (0..i).all(|j| g.get(i, j) == g.get(j, i)));
    c.check(symmetric, || "Gram matrix is not symmetric".into());
    for (i, &s) in subs.iter().enumerate() {
        c.check(g.get(i, i).is_one(), || format!("diagonal at {} is {}", mask_string(s), g.get(i, i)));
    }

    let rank = rational_rank(&g);
    c.check(rank == size, || format!("Gram rank {rank}, expected {size}"));

    let spectrum = johnson_spectrum(n, m);
    let mut total = 0;
    let mut parts = Vec::new();
    for (lam, mult) in &spectrum {
        c.check(!lam.is_zero(), || format!("Johnson eigenvalue {lam} vanishes"));
        let corank = (size - rational_rank(&g.shift_diagonal(lam)?)) as i64;
        c.check(corank == *mult, || format!("eigenvalue {lam}: corank {corank}, expected multiplicity {mult}"));
        total += mult;
        parts.push(format!("{lam}:{mult}"));
    }
    c.check(total == size as i64, || format!("multiplicities add to {total}, not {size}"));
    Ok(c.finish(format!("rank {rank}, spectrum {}", parts.join(" "))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn four_two_entries() {
        let (subs, g) = gram_matrix(4, 2);
        assert_eq!(subs.len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let overlap = (subs[i] & subs[j]).count_ones();
                let want = match overlap {
                    2 => ratio(1, 1),
                    1 => ratio(1, 4),
                    _ => ratio(1, 10),
                };
                assert_eq!(*g.get(i, j), want);
            }
        }
    }

    #[test]
    fn five_two_multiplicities() {
        let mults: Vec<i64> = (0..=2).map(|t| johnson_multiplicity(5, t)).collect();
        assert_eq!(mults, vec![1, 4, 5]);
        let r = verify_johnson_gram(5, 2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_grams_pass() {
        for n in 1..=6 {
            for m in 0..=n {
                let r = verify_johnson_gram(n, m).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        assert!(verify_johnson_gram(3, 4).is_err());
        assert!(verify_johnson_gram(12, 6).is_err());
    }
}
