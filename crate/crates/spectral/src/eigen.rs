use std::fmt;

use chain_core::Kernel;
use exact_core::{binomial, BigInt, Rational, ScaledVector};
use num_traits::{One, Zero};

/// `β_k = C(2k, k)² / 2^{4k}`.
pub fn beta(k: u64) -> Rational {
    let c = binomial(2 * k, k as i64);
    Rational::new(&c * &c, BigInt::one() << (4 * k))
}

/// An eigenvalue of the binary kernel: some `β_k`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenvalue {
    Beta(u64),
    Zero,
}

impl Eigenvalue {
    pub fn value(&self) -> Rational {
        match self {
            Eigenvalue::Beta(k) => beta(*k),
            Eigenvalue::Zero => Rational::zero(),
        }
    }

    /// `β_{(m+ℓ)/2}` when `m + ℓ` is even, otherwise zero.
    pub fn for_level(m: usize, l: usize) -> Self {
        if (m + l) % 2 == 0 {
            Eigenvalue::Beta(((m + l) / 2) as u64)
        } else {
            Eigenvalue::Zero
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        write!(f, "{}/{}", v.numer(), v.denom())
    }
}

/// Eigenvalue multiplicities: `β_k ↦ C(n, 2k)` and `0 ↦ 2^{n-1}`
/// (no zero eigenvalue when `n = 0`).
pub fn multiplicity_table(n: usize) -> Vec<(Eigenvalue, u64)> {
    let mut out: Vec<(Eigenvalue, u64)> = (0..=n / 2)
        .map(|k| (Eigenvalue::Beta(k as u64), u64::try_from(binomial(n as u64, 2 * k as i64)).expect("fits")))
        .collect();
    if n > 0 {
        out.push((Eigenvalue::Zero, 1u64 << (n - 1)));
    }
    out
}

/// Exact test of `K v = λ v`, done on integers: with `v = u / c` and
/// `K = A / D`, it reads `den(λ) · A u = num(λ) · D · u`.
pub fn is_eigenvector(kernel: &Kernel, v: &[Rational], lambda: &Rational) -> bool {
    let u = ScaledVector::from_rationals(v);
    let au = kernel.matrix().mul_vec_big(u.numerators());
    let scale = lambda.numer() * BigInt::from(kernel.matrix().denom());
    au.iter().zip(u.numerators()).all(|(lhs, x)| lhs * lambda.denom() == x * &scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn beta_values() {
        assert_eq!(beta(0), ratio(1, 1));
        assert_eq!(beta(1), ratio(1, 4));
        assert_eq!(beta(2), ratio(9, 64));
        assert_eq!(beta(3), ratio(25, 256));
    }

    #[test]
    fn multiplicity_examples() {
        let four = multiplicity_table(4);
        assert_eq!(
            four,
            vec![(Eigenvalue::Beta(0), 1), (Eigenvalue::Beta(1), 6), (Eigenvalue::Beta(2), 1), (Eigenvalue::Zero, 8)]
        );
        let three = multiplicity_table(3);
        assert_eq!(three, vec![(Eigenvalue::Beta(0), 1), (Eigenvalue::Beta(1), 3), (Eigenvalue::Zero, 4)]);
        for n in 0..20 {
            let total: u64 = multiplicity_table(n).iter().map(|(_, m)| m).sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn constants_are_eigenvectors_with_eigenvalue_one() {
        let k = chain_core::build_kernel(3, 2).unwrap();
        assert!(is_eigenvector(&k, &vec![ratio(1, 1); 8], &ratio(1, 1)));
        assert!(!is_eigenvector(&k, &vec![ratio(1, 1); 8], &ratio(1, 2)));
    }
}
