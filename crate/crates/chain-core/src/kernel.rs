use exact_core::{binomial, multinomial, BigInt, Matrix, Rational, ScaledMatrix, Scalar};
use rayon::prelude::*;

use crate::caps::StateCap;
use crate::error::ChainError;
use crate::kernel_entry::{kernel_denominator, scaled_entry, PairCounts};
use crate::state::State;

/// The full transition matrix on `C_k^n` together with its stationary law.
///
/// Entries are held over the common denominator `k^n n!`; see
/// [`ScaledMatrix`]. Construction checks stochasticity and detailed balance
/// exactly.
#[derive(Clone, Debug)]
pub struct Kernel {
    n: usize,
    k: u8,
    matrix: ScaledMatrix,
    orbit_sizes: Vec<u64>,
    orbits: u64,
}

/// Number of orbits `Z = C(n + k - 1, k - 1)`.
pub fn orbit_count(n: usize, k: u8) -> u64 {
    u64::try_from(binomial((n + k as usize - 1) as u64, i64::from(k) - 1)).expect("orbit count overflow")
}

/// Builds the `(n, k)` kernel under the caps from the environment.
pub fn build_kernel(n: usize, k: u8) -> Result<Kernel, ChainError> {
    build_kernel_with_cap(n, k, &StateCap::from_env())
}

pub fn build_kernel_with_cap(n: usize, k: u8, cap: &StateCap) -> Result<Kernel, ChainError> {
    if k < 2 {
        return Err(ChainError::InvalidAlphabet(k));
    }
    let size = cap.check(n, k)?;
    let denom = kernel_denominator(n, k).ok_or(ExactOverflow)?;
    let states: Vec<State> = (0..size).map(|i| State::from_index(i, n, k)).collect();
    let rows: Vec<Vec<i64>> = states
        .par_iter()
        .map(|x| {
            states
                .iter()
                .map(|y| scaled_entry(&PairCounts::new(x, y).expect("same shape")).ok_or(ExactOverflow))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let matrix = ScaledMatrix::new(size, size, denom, rows.into_iter().flatten().collect())?;
    let orbit_sizes = states
        .iter()
        .map(|x| {
            let c: Vec<u64> = x.counts().iter().map(|&c| c as u64).collect();
            u64::try_from(multinomial(&c)).expect("orbit size overflow")
        })
        .collect();
    let kernel = Kernel { n, k, matrix, orbit_sizes, orbits: orbit_count(n, k) };
    kernel.check_invariants()?;
    Ok(kernel)
}

struct ExactOverflow;

impl From<ExactOverflow> for ChainError {
    fn from(_: ExactOverflow) -> Self {
        ChainError::Exact(exact_core::ExactError::Overflow)
    }
}

impl Kernel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of states `k^n`.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ScaledMatrix {
        &self.matrix
    }

    pub fn state(&self, index: usize) -> State {
        State::from_index(index, self.n, self.k)
    }

    pub fn entry(&self, x: usize, y: usize) -> Rational {
        self.matrix.entry(x, y)
    }

    pub fn row(&self, x: usize) -> Vec<Rational> {
        (0..self.size()).map(|y| self.entry(x, y)).collect()
    }

    pub fn orbit_size(&self, x: usize) -> u64 {
        self.orbit_sizes[x]
    }

    pub fn orbit_count(&self) -> u64 {
        self.orbits
    }

    /// `π(x) = 1 / (Z |O_x|)`.
    pub fn pi(&self, x: usize) -> Rational {
        Rational::new(BigInt::from(1), BigInt::from(self.orbits) * self.orbit_sizes[x])
    }

    pub fn stationary(&self) -> Vec<Rational> {
        (0..self.size()).map(|x| self.pi(x)).collect()
    }

    pub fn to_rational_matrix(&self) -> Matrix<Rational> {
        self.matrix.to_matrix()
    }

    pub fn to_matrix<S: Scalar>(&self) -> Matrix<S> {
        self.matrix.to_matrix()
    }

    /// Row sums equal to one and `π(x) K(x,y) = π(y) K(y,x)`, both exact.
    /// Balance reads `A(x,y) |O_y| = A(y,x) |O_x|` on the scaled integers.
    pub fn check_invariants(&self) -> Result<(), ChainError> {
        let d = self.matrix.denom();
        let size = self.size();
        (0..size).into_par_iter().try_for_each(|x| {
            let row = self.matrix.raw_row(x);
            let sum: i128 = row.iter().map(|&a| i128::from(a)).sum();
            if sum != i128::from(d) {
                return Err(ChainError::InvariantViolation(format!("row {x} sums to {sum}/{d}")));
            }
            for y in x + 1..size {
                let lhs = i128::from(row[y]) * i128::from(self.orbit_sizes[y]);
                let rhs = i128::from(self.matrix.raw(y, x)) * i128::from(self.orbit_sizes[x]);
                if lhs != rhs {
                    return Err(ChainError::InvariantViolation(format!("detailed balance fails at ({x}, {y})")));
                }
            }
            Ok(())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::{ratio, rat_int};
    use num_traits::Zero;

    #[test]
    fn two_coordinate_kernel() {
        let k = build_kernel(2, 2).unwrap();
        let m = k.to_rational_matrix();
        let outer = [ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)];
        assert_eq!(m.row(0), &outer);
        assert_eq!(m.row(3), &outer);
        assert_eq!(m.row(1), &[ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)]);
        assert_eq!(k.stationary(), vec![ratio(1, 3), ratio(1, 6), ratio(1, 6), ratio(1, 3)]);
    }

    #[test]
    fn one_coordinate_kernel_is_all_halves() {
        let m = build_kernel(1, 2).unwrap().to_rational_matrix();
        assert!(m.data().iter().all(|e| *e == ratio(1, 2)));
    }

    #[test]
    fn rows_sum_to_one() {
        for (n, k) in [(3, 2), (5, 2), (3, 3), (2, 4)] {
            let ker = build_kernel(n, k).unwrap();
            for x in 0..ker.size() {
                let s: Rational = ker.row(x).iter().sum();
                assert_eq!(s, rat_int(1));
            }
            let total: Rational = ker.stationary().iter().sum();
            assert_eq!(total, rat_int(1));
        }
    }

    #[test]
    fn stationary_is_invariant() {
        let ker = build_kernel(4, 2).unwrap();
        let pi = ker.stationary();
        let pushed = ker.to_rational_matrix().vec_mul(&pi).unwrap();
        assert_eq!(pushed, pi);
        assert!(pi.iter().all(|p| !p.is_zero()));
    }

    #[test]
    fn cap_is_enforced() {
        let cap = StateCap { binary: 8, alphabet: 9 };
        assert!(build_kernel_with_cap(3, 2, &cap).is_ok());
        assert!(matches!(build_kernel_with_cap(4, 2, &cap), Err(ChainError::CapExceeded { .. })));
        assert!(matches!(build_kernel_with_cap(3, 3, &cap), Err(ChainError::CapExceeded { .. })));
    }

    #[test]
    fn float_view_matches_exact() {
        let ker = build_kernel(3, 3).unwrap();
        let f = ker.to_matrix::<f64>();
        for x in 0..ker.size() {
            let s: f64 = f.row(x).iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
