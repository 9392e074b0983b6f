//! Exact chi-square and total variation distances from a start state.
//!
//! The law after `ℓ` steps is row `x` of `K^ℓ`. It is obtained by pushing a
//! point mass through the integer matrix `A = D K` one step at a time, so
//! every intermediate is a single big-integer vector over one denominator.

use std::collections::BTreeMap;

use chain_core::{ChainError, Kernel, State};
use exact_core::{mat_pow, BigInt, Rational, Scalar, ScaledVector};
use num_traits::{One, Signed, Zero};

use crate::error::MixingError;

pub(crate) fn check_state(kernel: &Kernel, x: &State) -> Result<(), MixingError> {
    if x.n() != kernel.n() || x.k() != kernel.k() {
        return Err(ChainError::ShapeMismatch { n1: kernel.n(), k1: kernel.k(), n2: x.n(), k2: x.k() }.into());
    }
    Ok(())
}

/// The law `K^ℓ(x, ·)`.
pub fn law_after(kernel: &Kernel, x: &State, l: u64) -> Result<ScaledVector, MixingError> {
    check_state(kernel, x)?;
    let mut mu = ScaledVector::point_mass(kernel.size(), x.index());
    for _ in 0..l {
        mu = mu.times(kernel.matrix());
    }
    Ok(mu)
}

/// The same law read off `K^ℓ` computed with [`mat_pow`]. Only meant as a
/// cross-check on small state spaces.
pub fn law_by_matrix_power(kernel: &Kernel, x: &State, l: u64) -> Result<Vec<Rational>, MixingError> {
    check_state(kernel, x)?;
    let p = mat_pow(&kernel.to_rational_matrix(), l).map_err(ChainError::from)?;
    Ok(p.row(x.index()).to_vec())
}

/// `Σ_y (μ(y) - π(y))² / π(y)`, evaluated as `Z Σ_y |O_y| μ(y)² - 1`.
pub fn chi2_of_law(kernel: &Kernel, mu: &ScaledVector) -> Rational {
    let sum: BigInt = mu
        .numerators()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(y, a)| a * a * kernel.orbit_size(y))
        .sum();
    let d = mu.denominator();
    Rational::new(sum * kernel.orbit_count(), d * d) - Rational::one()
}

/// `½ Σ_y |μ(y) - π(y)|`. Terms are pooled by orbit size so that only a
/// handful of distinct denominators meet.
pub fn tv_of_law(kernel: &Kernel, mu: &ScaledVector) -> Rational {
    let d = mu.denominator();
    let z = BigInt::from(kernel.orbit_count());
    let mut pools: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (y, a) in mu.numerators().iter().enumerate() {
        let o = kernel.orbit_size(y);
        // μ(y) - π(y) = (a Z o - d) / (d Z o)
        let diff = (a * &z * o - d).abs();
        *pools.entry(o).or_insert_with(BigInt::zero) += diff;
    }
    let total: Rational = pools
        .into_iter()
        .map(|(o, s)| Rational::new(s, d * &z * o))
        .sum();
    total / Rational::from_integer(2.into())
}

/// `χ²_x(ℓ)` exactly.
pub fn chi2_exact(kernel: &Kernel, x: &State, l: u64) -> Result<Rational, MixingError> {
    Ok(chi2_of_law(kernel, &law_after(kernel, x, l)?))
}

/// `‖K^ℓ(x, ·) - π‖_TV` exactly.
pub fn tv_exact(kernel: &Kernel, x: &State, l: u64) -> Result<Rational, MixingError> {
    Ok(tv_of_law(kernel, &law_after(kernel, x, l)?))
}

/// Chi-square distance of a row from `pi` in any scalar type.
pub fn chi2_of_row<S: Scalar>(row: &[S], pi: &[S]) -> S {
    row.iter().zip(pi).fold(S::zero(), |acc, (r, p)| {
        let d = r.clone() - p.clone();
        acc + d.clone() * d / p.clone()
    })
}

/// Total variation distance of a row from `pi` in any scalar type.
pub fn tv_of_row<S: Scalar>(row: &[S], pi: &[S]) -> S {
    let sum = row.iter().zip(pi).fold(S::zero(), |acc, (r, p)| acc + (r.clone() - p.clone()).abs());
    sum / (S::one() + S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain_core::build_kernel;
    use exact_core::ratio;

    #[test]
    fn two_coordinate_examples() {
        let k = build_kernel(2, 2).unwrap();
        let x = State::parse("01", 2).unwrap();
        assert_eq!(chi2_exact(&k, &x, 1).unwrap(), ratio(1, 8));
        assert_eq!(tv_exact(&k, &x, 1).unwrap(), ratio(1, 6));
        assert_eq!(k.entry(x.index(), x.index()), ratio(1, 4));
    }

    #[test]
    fn zero_steps_is_a_point_mass() {
        let k = build_kernel(4, 2).unwrap();
        for i in 0..k.size() {
            let x = k.state(i);
            let p = k.pi(i);
            assert_eq!(chi2_exact(&k, &x, 0).unwrap(), Rational::one() / &p - Rational::one());
            assert_eq!(tv_exact(&k, &x, 0).unwrap(), Rational::one() - p);
        }
    }

    #[test]
    fn integer_evolution_matches_matrix_powers() {
        for (n, kk) in [(3usize, 2u8), (4, 2), (2, 3)] {
            let k = build_kernel(n, kk).unwrap();
            let pi = k.stationary();
            for i in 0..k.size() {
                let x = k.state(i);
                for l in 0..4 {
                    let row = law_by_matrix_power(&k, &x, l).unwrap();
                    assert_eq!(law_after(&k, &x, l).unwrap().to_rationals(), row);
                    assert_eq!(chi2_exact(&k, &x, l).unwrap(), chi2_of_row(&row, &pi));
                    assert_eq!(tv_exact(&k, &x, l).unwrap(), tv_of_row(&row, &pi));
                }
            }
        }
    }

    #[test]
    fn float_rows_track_exact_rows() {
        let k = build_kernel(3, 2).unwrap();
        let x = State::parse("011", 2).unwrap();
        let row: Vec<f64> = k.row(x.index()).iter().map(|r| Scalar::to_f64(r)).collect();
        let pi: Vec<f64> = k.stationary().iter().map(|r| Scalar::to_f64(r)).collect();
        let exact = Scalar::to_f64(&chi2_exact(&k, &x, 1).unwrap());
        assert!((chi2_of_row(&row, &pi) - exact).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let k = build_kernel(3, 2).unwrap();
        assert!(chi2_exact(&k, &State::zeros(4, 2), 1).is_err());
    }
}
