//! Dense row-major matrices over any [`Scalar`].

use rayon::prelude::*;

use crate::error::ExactError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::BadShape { rows, cols, len: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors, which must all share one length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<S> = rows.into_iter().flatten().collect();
        Self::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        Ok(())
    }

    fn mismatch(&self, other: &Self) -> ExactError {
        ExactError::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// `self - lambda * I`.
    pub fn shift_diagonal(&self, lambda: &S) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i).clone() - lambda.clone();
            out.set(i, i, v);
        }
        Ok(out)
    }

    /// Matrix product. Output rows are computed in parallel; each entry is
    /// summed in the same left-to-right order as a sequential loop would.
    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let cols = other.cols;
        let data: Vec<S> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|r| {
                let row = self.row(r);
                let mut out = vec![S::zero(); cols];
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let brow = other.row(k);
                    for (o, b) in out.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *o = o.clone() + a.clone() * b.clone();
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self { rows: self.rows, cols, data })
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .into_par_iter()
            .map(|r| {
                self.row(r).iter().zip(v).fold(S::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect())
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[S]) -> Result<Vec<S>, ExactError> {
        if v.len() != self.rows {
            return Err(ExactError::DimensionMismatch {
                left_rows: 1,
                left_cols: v.len(),
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        let mut out = vec![S::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(r)) {
                *o = o.clone() + a.clone() * b.clone();
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols).clone()
                * other.get(r % other.rows, c % other.cols).clone()
        })
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, exp: u64) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

/// `M^exp`; the zeroth power is the identity.
pub fn mat_pow<S: Scalar>(m: &Matrix<S>, exp: u64) -> Result<Matrix<S>, ExactError> {
    m.pow(exp)
}
