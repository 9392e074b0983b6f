use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Field-like scalar the generic matrix code runs over.
///
/// Implemented for [`BigRational`] (exact) and for `f64` / `f32`. The
/// conversion hooks let exact data (kernel entries, eigenvalues) be pushed
/// into any implementation without an intermediate float.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Converts the fraction `num / den`. `den` is nonzero.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    /// Lossy view of the value as a double.
    fn to_f64(&self) -> f64;

    /// True when arithmetic on this type never rounds.
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_ratio(r.numer(), r.denom())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(&BigInt::from(v), &BigInt::from(1))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        <f64 as Scalar>::from_ratio(num, den) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn third<S: Scalar>() -> S {
        S::from_ratio(&BigInt::from(1), &BigInt::from(3))
    }

    #[test]
    fn conversions_agree_across_implementations() {
        let exact: BigRational = third();
        assert_eq!(exact, BigRational::new(1.into(), 3.into()));
        assert!((third::<f64>() - 1.0 / 3.0).abs() < 1e-16);
        assert!((third::<f32>() - 1.0f32 / 3.0).abs() < 1e-7);
        assert!((Scalar::to_f64(&exact) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn huge_ratios_convert_without_overflow() {
        let num = BigInt::from(7) * BigInt::from(10).pow(400);
        let den = BigInt::from(10).pow(400);
        assert!((<f64 as Scalar>::from_ratio(&num, &den) - 7.0).abs() < 1e-12);
    }
}
