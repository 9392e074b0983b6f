//! Chi-square distance from the unit state `e_n = 0…01`.
//!
//! At `e_n` every basis vector with `m ≥ 2` vanishes, and among `m = 1`
//! only the tableau holding `n` in its second row survives. The surviving
//! values are
//!
//! ```text
//! f^{0,ℓ}(e_n) = C(n-1, ℓ) - ℓ C(n-1, ℓ-1)
//! f^{1,ℓ}(e_n) = -(2+ℓ) C(n-2, ℓ)
//! ```
//!
//! so the distance is a sum of about `2n` closed-form pieces and works at
//! any `n`. The pieces `(m, ℓ) = (0, 2)` and `(1, 1)` carry `β_1` and tend
//! to `5` and `30` after dividing by `(1/4)^{2s}`.

use exact_core::{binomial, BigInt, Rational};
use num_traits::{Signed, Zero};
use spectral::{norm_f_q, Eigenvalue, Tableau};

use crate::error::{range, MixingError};
use crate::expansion::pow;

pub const ONE_ONE_LOWER: u64 = 5;
pub const ONE_ONE_UPPER: u64 = 270;
pub const ONE_ONE_LIMIT: u64 = 35;

fn c(n: usize, k: i64) -> BigInt {
    if k < 0 {
        BigInt::zero()
    } else {
        binomial(n as u64, k)
    }
}

pub fn unit_value_level0(n: usize, l: usize) -> BigInt {
    let l = l as i64;
    c(n - 1, l) - BigInt::from(l) * c(n - 1, l - 1)
}

pub fn unit_value_level1(n: usize, l: usize) -> BigInt {
    -BigInt::from(2 + l) * c(n - 2, l as i64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub m: usize,
    pub l: usize,
    pub value_at_unit: BigInt,
    pub norm: Rational,
    pub eigenvalue: Eigenvalue,
}

impl Piece {
    /// `f(e_n)² / ‖f‖² · β^{2s}`.
    pub fn contribution(&self, s: u64) -> Rational {
        match self.eigenvalue {
            Eigenvalue::Zero => Rational::zero(),
            Eigenvalue::Beta(_) => {
                let v = &self.value_at_unit;
                Rational::from_integer(v * v) / &self.norm * pow(&self.eigenvalue.value(), 2 * s)
            }
        }
    }
}

/// Every non-constant basis vector that is nonzero at `e_n`, plus the
/// zero-eigenvalue ones among the two families (they contribute nothing
/// for `s ≥ 1` but are listed for completeness).
pub fn one_one_pieces(n: usize) -> Result<Vec<Piece>, MixingError> {
    if n < 2 {
        return Err(range("one_one_pieces", format!("needs n >= 2, got {n}")));
    }
    let mut out = Vec::with_capacity(2 * n);
    let t0 = Tableau::column_reading(n, 0)?;
    for l in 1..=n {
        out.push(Piece {
            m: 0,
            l,
            value_at_unit: unit_value_level0(n, l),
            norm: norm_f_q(n, 0, l, &t0)?,
            eigenvalue: Eigenvalue::for_level(0, l),
        });
    }
    let t1 = Tableau::new(n, vec![n])?;
    for l in 0..=n - 2 {
        out.push(Piece {
            m: 1,
            l,
            value_at_unit: unit_value_level1(n, l),
            norm: norm_f_q(n, 1, l, &t1)?,
            eigenvalue: Eigenvalue::for_level(1, l),
        });
    }
    Ok(out)
}

pub fn chi2_from_one_one(n: usize, s: u64) -> Result<Rational, MixingError> {
    if s == 0 {
        return Err(MixingError::ZeroSteps);
    }
    Ok(one_one_pieces(n)?.iter().map(|p| p.contribution(s)).sum())
}

/// Only the `(0, 2)` and `(1, 1)` pieces, divided by `(1/4)^{2s}`; the
/// quotient does not depend on `s`.
pub fn leading_constant(n: usize) -> Result<(Rational, Rational), MixingError> {
    let pieces = one_one_pieces(n)?;
    let pick = |m: usize, l: usize| {
        let p = pieces.iter().find(|p| p.m == m && p.l == l).expect("piece exists for n >= 2");
        let v = &p.value_at_unit;
        Rational::from_integer(v * v) / &p.norm
    };
    if n < 3 {
        return Err(range("leading_constant", format!("needs n >= 3, got {n}")));
    }
    Ok((pick(0, 2), pick(1, 1)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneOneEnvelope {
    pub n: usize,
    pub s: u64,
    pub value: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl OneOneEnvelope {
    pub fn holds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }

    /// `value / (1/4)^{2s}`.
    pub fn scaled(&self) -> Rational {
        &self.value / pow(&Rational::new(1.into(), 4.into()), 2 * self.s)
    }
}

/// The distance with the interval `[5, 270] · (1/4)^{2s}` beside it.
pub fn one_one_envelope(n: usize, s: u64) -> Result<OneOneEnvelope, MixingError> {
    if n < 3 || s < 3 {
        return Err(range("one_one_envelope", format!("needs n >= 3 and s >= 3, got n={n}, s={s}")));
    }
    let value = chi2_from_one_one(n, s)?;
    let unit = pow(&Rational::new(1.into(), 4.into()), 2 * s);
    debug_assert!(!value.is_negative());
    Ok(OneOneEnvelope {
        n,
        s,
        value,
        lower: Rational::from_integer(ONE_ONE_LOWER.into()) * &unit,
        upper: Rational::from_integer(ONE_ONE_UPPER.into()) * &unit,
    })
}
