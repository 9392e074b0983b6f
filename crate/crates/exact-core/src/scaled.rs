//! Common-denominator representations.
//!
//! A Burnside kernel on `k^n` states has every entry of the form
//! `a / (k^n n!)` with `a` a machine integer, so the whole matrix fits in
//! one `i64` array plus one denominator. That keeps a 2187 x 2187 kernel in
//! tens of megabytes where boxed fractions would need gigabytes, and makes
//! exact matrix–vector products plain integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::ExactError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// The rational matrix `data / denom` with integer `data`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledMatrix {
    rows: usize,
    cols: usize,
    denom: i64,
    data: Vec<i64>,
}

impl ScaledMatrix {
    pub fn new(rows: usize, cols: usize, denom: i64, data: Vec<i64>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::BadShape { rows, cols, len: data.len() });
        }
        assert!(denom > 0, "ScaledMatrix denominator must be positive");
        Ok(Self { rows, cols, denom, data })
    }

    /// Builds from a rational matrix by clearing to the common denominator.
    pub fn from_rational(m: &Matrix<Rational>) -> Result<Self, ExactError> {
        let l = m.data().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let denom = i64::try_from(&l).map_err(|_| ExactError::Overflow)?;
        let data = m
            .data()
            .iter()
            .map(|x| i64::try_from(x.numer() * (&l / x.denom())).map_err(|_| ExactError::Overflow))
            .collect::<Result<_, _>>()?;
        Self::new(m.rows(), m.cols(), denom, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Scaled (integer) entry.
    pub fn raw(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn raw_row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn raw_data(&self) -> &[i64] {
        &self.data
    }

    pub fn entry(&self, r: usize, c: usize) -> Rational {
        Rational::new(self.raw(r, c).into(), self.denom.into())
    }

    pub fn to_matrix<S: Scalar>(&self) -> Matrix<S> {
        let d = BigInt::from(self.denom);
        Matrix::from_fn(self.rows, self.cols, |r, c| S::from_ratio(&BigInt::from(self.raw(r, c)), &d))
    }

    /// Integer product `data · v` (the true product times `denom`).
    pub fn mul_vec_i128(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .into_par_iter()
            .map(|r| self.raw_row(r).iter().zip(v).map(|(&a, &b)| i128::from(a) * b).sum())
            .collect()
    }

    /// Integer product `data · v` for big integer vectors.
    pub fn mul_vec_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .into_par_iter()
            .map(|r| {
                self.raw_row(r)
                    .iter()
                    .zip(v)
                    .filter(|(&a, b)| a != 0 && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (&a, b)| acc + b * a)
            })
            .collect()
    }

    /// Integer product `v · data` for a big integer row vector.
    pub fn vec_mul_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .into_par_iter()
            .map(|c| {
                (0..self.rows)
                    .filter(|&r| !v[r].is_zero())
                    .fold(BigInt::zero(), |acc, r| {
                        let a = self.raw(r, c);
                        if a == 0 {
                            acc
                        } else {
                            acc + &v[r] * a
                        }
                    })
            })
            .collect()
    }

    /// `data - shift * I` widened to `i128`, ready for [`crate::rank_mod_p`].
    pub fn shifted_i128(&self, shift: i128) -> Vec<i128> {
        let mut out: Vec<i128> = self.data.iter().map(|&x| i128::from(x)).collect();
        for i in 0..self.rows.min(self.cols) {
            out[i * self.cols + i] -= shift;
        }
        out
    }
}

/// The rational vector `num / den` sharing one denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    num: Vec<BigInt>,
    den: BigInt,
}

impl ScaledVector {
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(den.is_positive(), "ScaledVector denominator must be positive");
        let mut v = Self { num, den };
        v.reduce();
        v
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        let mut num = vec![BigInt::zero(); len];
        num[at] = BigInt::one();
        Self { num, den: BigInt::one() }
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Self { num, den }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn get(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Row vector times matrix, exactly.
    pub fn times(&self, m: &ScaledMatrix) -> Self {
        let num = m.vec_mul_big(&self.num);
        Self::new(num, &self.den * m.denom())
    }

    /// Divides out the common factor of all numerators and the denominator.
    pub fn reduce(&mut self) {
        let g = self.num.iter().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() && !g.is_zero() {
            for x in self.num.iter_mut() {
                *x /= &g;
            }
            self.den /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn sample() -> Matrix<Rational> {
        Matrix::from_rows(vec![
            vec![ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)],
            vec![ratio(1, 4); 4],
            vec![ratio(1, 4); 4],
            vec![ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)],
        ])
        .unwrap()
    }

    #[test]
    fn round_trip_through_common_denominator() {
        let m = sample();
        let s = ScaledMatrix::from_rational(&m).unwrap();
        assert_eq!(s.denom(), 8);
        assert_eq!(s.to_matrix::<Rational>(), m);
        assert_eq!(s.entry(1, 2), ratio(1, 4));
    }

    #[test]
    fn vector_evolution_matches_rational_product() {
        let m = sample();
        let s = ScaledMatrix::from_rational(&m).unwrap();
        let v = ScaledVector::point_mass(4, 0);
        let two = v.times(&s).times(&s);
        let direct = m.vec_mul(&m.vec_mul(&v.to_rationals()).unwrap()).unwrap();
        assert_eq!(two.to_rationals(), direct);
        let half = ScaledVector::from_rationals(&[ratio(1, 2), ratio(1, 6), ratio(1, 3), ratio(0, 1)]);
        assert_eq!(half.denominator(), &BigInt::from(6));
    }

    #[test]
    fn integer_products() {
        let s = ScaledMatrix::from_rational(&sample()).unwrap();
        assert_eq!(s.mul_vec_i128(&[1, 1, 1, 1]), vec![8; 4]);
        let big: Vec<BigInt> = [1, -1, -1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.mul_vec_big(&big), [4, 0, 0, 4].map(BigInt::from).to_vec());
        let shifted = s.shifted_i128(8);
        assert_eq!(shifted[0], 3 - 8);
        assert_eq!(shifted[1], 1);
    }
}
