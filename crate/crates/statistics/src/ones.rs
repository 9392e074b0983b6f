//! The number of ones `|x|` and covariances of coordinate blocks.
//!
//! With `x_i - 1/2 = -f_{i}(x)/2` and `f_{i}` in the zero eigenspace, one
//! step already centers every coordinate. Pair products expand as
//! `(x_i - 1/2)(x_j - 1/2) = (f_{i,j}(x) + 1/2)/6` for `i ≠ j`, and decay
//! at rate `1/4`.

use std::collections::BTreeSet;

use chain_core::State;
use exact_core::{rat_int, BigInt, Rational};
use num_traits::{One, Zero};

use crate::alternations::f2;
use crate::error::{binary_only, StatsError};
use crate::moments::{MomentReport, Provenance};

fn quarter_pow(l: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (2 * l))
}

/// Mean and variance of `|X_ℓ|` given `X_0 = x`. For `ℓ ≥ 1`:
/// mean `n/2`, variance `n(n+2)/12 (1 - 4^{-ℓ}) + (|x| - n/2)² 4^{-ℓ}`.
pub fn ones_moments(x: &State, l: u64) -> Result<MomentReport, StatsError> {
    binary_only(x)?;
    let n = x.n() as u64;
    let (mean, variance) = if l == 0 {
        (rat_int(x.ones() as u64), Rational::zero())
    } else {
        let q = quarter_pow(l);
        let offset = rat_int(x.ones() as u64) - Rational::new(n.into(), 2.into());
        let spread = Rational::new((n * (n + 2)).into(), 12.into());
        (Rational::new(n.into(), 2.into()), spread * (Rational::one() - &q) + &offset * &offset * q)
    };
    Ok(MomentReport { quantity: "ones", l: Some(l), mean, variance, provenance: Provenance::ClosedForm })
}

fn check_coordinate(x: &State, i: usize) -> Result<(), StatsError> {
    if i == 0 || i > x.n() {
        return Err(StatsError::Range { what: "coordinate", detail: format!("{i} not in 1..={}", x.n()) });
    }
    Ok(())
}

/// `E[(X_ℓ,i - 1/2)(X_ℓ,j - 1/2) | X_0 = x]` for 1-based `i`, `j`.
pub fn centered_pair_product_after(x: &State, i: usize, j: usize, l: u64) -> Result<Rational, StatsError> {
    binary_only(x)?;
    check_coordinate(x, i)?;
    check_coordinate(x, j)?;
    if i == j {
        return Ok(Rational::new(1.into(), 4.into()));
    }
    let f = rat_int(f2(x.digits(), i - 1, j - 1));
    Ok((quarter_pow(l) * f + Rational::new(1.into(), 2.into())) / rat_int(6))
}

/// `Cov(|X_ℓ,S|, |X_ℓ,T|)` given `X_0 = x`; zero at `ℓ = 0`, where the
/// state is deterministic.
pub fn ones_covariance_after(x: &State, s: &[usize], t: &[usize], l: u64) -> Result<Rational, StatsError> {
    binary_only(x)?;
    if l == 0 {
        for &i in s.iter().chain(t) {
            check_coordinate(x, i)?;
        }
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for &i in s {
        for &j in t {
            total += centered_pair_product_after(x, i, j, l)?;
        }
    }
    Ok(total)
}

/// Stationary `Cov(|x_S|, |x_T|) = |S||T|/12 + |S ∩ T|/6`.
pub fn ones_covariance(s: &[usize], t: &[usize]) -> Rational {
    let a: BTreeSet<_> = s.iter().collect();
    let b: BTreeSet<_> = t.iter().collect();
    let common = a.intersection(&b).count() as u64;
    Rational::new(((s.len() * t.len()) as u64).into(), 12.into()) + Rational::new(common.into(), 6.into())
}
