//! Exact arithmetic substrate.
//!
//! Everything downstream computes with [`Rational`] (an arbitrary precision
//! fraction kept in lowest terms) or with a float type, through the
//! [`Scalar`] trait. Dense matrices are generic over that trait so the same
//! code path produces exact answers and quick floating point previews.
//!
//! The crate also carries the pieces that are only meaningful exactly:
//! fraction-free rank, rational null spaces, rank modulo a prime, and a
//! sign/log-magnitude number ([`LogReal`]) for sums that overflow `f64`.

pub mod combinat;
pub mod error;
pub mod logreal;
pub mod matrix;
pub mod rank;
pub mod scalar;
pub mod scaled;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use combinat::{binomial, binomial_u128, factorial, multinomial, rising_factorial};
pub use error::ExactError;
pub use logreal::{LogReal, NeumaierSum, Sign};
pub use matrix::{mat_pow, Matrix};
pub use rank::{integer_rank, nullspace, rank_mod_p, rational_rank, CERT_PRIMES};
pub use scalar::Scalar;
pub use scaled::{ScaledMatrix, ScaledVector};

/// Exact rational scalar.
pub type Rational = BigRational;
/// Dense matrix of exact rationals.
pub type RationalMatrix = Matrix<Rational>;
/// Dense double precision matrix.
pub type FloatMatrix = Matrix<f64>;
/// Dense single precision matrix.
pub type Float32Matrix = Matrix<f32>;

/// Shorthand for building a rational from two machine integers.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

/// Formats a rational as the `p/q` string used in every export format.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Inverse of [`format_rational`]; a bare integer is accepted too.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let r = ratio(-6, 8);
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(parse_rational("-3/4").unwrap(), r);
        assert_eq!(parse_rational("5").unwrap(), rat_int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rationals_are_kept_in_lowest_terms() {
        let r = ratio(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
