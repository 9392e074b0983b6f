//! Ranks and null spaces.
//!
//! [`rational_rank`] is exact: denominators are cleared row by row and the
//! resulting integer matrix is reduced with fraction-free (Bareiss)
//! elimination, so every division is exact and no fraction ever appears.
//!
//! [`rank_mod_p`] is the cheap companion for matrices too large for big
//! integer elimination. Reduction modulo a prime can only lose rank, so it
//! gives a lower bound on the rational rank; callers pair it with an
//! independent upper bound to pin the exact value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::matrix::Matrix;
use crate::Rational;

/// Primes below 2^31 used for certified modular ranks.
pub const CERT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Rank over the integers (equivalently the rationals) by fraction-free
/// elimination. All rows must share one length.
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        tail.par_iter_mut().for_each(|row| {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = &row[j] * &pivot - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        });
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix.
pub fn rational_rank(m: &Matrix<Rational>) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| clear_denominators(m.row(r))).collect();
    integer_rank(rows)
}

/// Multiplies a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Basis of the right null space `{v : M v = 0}` from the reduced row
/// echelon form. Vectors come back with a unit entry in their free column.
pub fn nullspace(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Rank modulo the prime `p` (`p < 2^32`) of an integer matrix given as
/// `rows` flattened row-major slices of signed entries.
pub fn rank_mod_p(data: &[i128], rows: usize, cols: usize, p: u64) -> usize {
    assert_eq!(data.len(), rows * cols, "rank_mod_p: bad shape");
    assert!(p < (1 << 32), "rank_mod_p: modulus must fit 32 bits");
    let pm = p as i128;
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| data[r * cols..(r + 1) * cols].iter().map(|&x| x.rem_euclid(pm) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        let row: Vec<u64> = a[rank].iter().map(|&x| x * inv % p).collect();
        a[rank] = row.clone();
        a[rank + 1..].par_iter_mut().for_each(|r| {
            let f = r[col];
            if f == 0 {
                return;
            }
            let neg = p - f;
            for j in col..cols {
                if row[j] != 0 {
                    r[j] = (r[j] + neg * row[j]) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Exact rank of a small signed integer matrix, for convenience in tests.
pub fn integer_rank_i128(data: &[i128], rows: usize, cols: usize) -> usize {
    integer_rank((0..rows).map(|r| data[r * cols..(r + 1) * cols].iter().map(|&x| BigInt::from(x)).collect()).collect())
}

/// Absolute value helper kept for callers that bound entry sizes.
pub fn max_abs_bits(row: &[BigInt]) -> u64 {
    row.iter().map(|x| x.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, ratio};

    #[test]
    fn zero_and_identity_ranks() {
        assert_eq!(rational_rank(&Matrix::<Rational>::zeros(4, 5)), 0);
        for d in 0..7 {
            assert_eq!(rational_rank(&Matrix::<Rational>::identity(d)), d);
        }
    }

    #[test]
    fn rank_sees_dependent_rows() {
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3), rat_int(1)],
            vec![rat_int(3), rat_int(2), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
        ])
        .unwrap();
        assert_eq!(rational_rank(&m), 2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4)],
            vec![rat_int(2), rat_int(4), rat_int(6), rat_int(8)],
            vec![rat_int(0), rat_int(1), ratio(1, 2), rat_int(0)],
        ])
        .unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 4 - rational_rank(&m));
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_rank_matches_exact_rank_on_small_example() {
        let data: Vec<i128> = vec![2, 4, 1, 1, 2, 7, 3, 6, 8, 5, 10, 9];
        let exact = integer_rank_i128(&data, 4, 3);
        assert_eq!(exact, 2);
        for p in CERT_PRIMES {
            assert_eq!(rank_mod_p(&data, 4, 3, p), exact);
        }
        // A small prime can lose rank but never gain it.
        assert!(rank_mod_p(&[2, 0, 0, 2], 2, 2, 2) <= 2);
        assert_eq!(rank_mod_p(&[2, 0, 0, 2], 2, 2, 2), 0);
    }
}
