//! Independent kernel oracle: literal enumeration of stabilizers.
//!
//! `K(x, y) = (1 / |G_x|) Σ_{s ∈ G_x ∩ G_y} 1 / |X_s|` with `|X_s| = k^{c(s)}`.
//! Every permutation of the coordinates is visited, so this is only usable
//! for a handful of coordinates. It shares no code with the closed forms.

use exact_core::{BigInt, Matrix, Rational};
use num_traits::Zero;

use crate::error::ChainError;
use crate::state::State;

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn cycle_count(perm: &[usize]) -> u32 {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if !seen[start] {
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    cycles
}

fn fixes(perm: &[usize], x: &State) -> bool {
    perm.iter().enumerate().all(|(i, &j)| x.digits()[i] == x.digits()[j])
}

/// One kernel entry by stabilizer enumeration.
pub fn brute_force_entry(x: &State, y: &State) -> Result<Rational, ChainError> {
    x.same_shape(y)?;
    let k = BigInt::from(x.k());
    let mut stab_x = 0u64;
    let mut sum = Rational::zero();
    for_each_permutation(x.n(), |perm| {
        if fixes(perm, x) {
            stab_x += 1;
            if fixes(perm, y) {
                sum += Rational::new(BigInt::from(1), k.pow(cycle_count(perm)));
            }
        }
    });
    Ok(sum / Rational::from_integer(stab_x.into()))
}

/// Whole kernel by stabilizer enumeration.
pub fn brute_force_kernel(n: usize, k: u8) -> Result<Matrix<Rational>, ChainError> {
    let size = (k as usize).pow(n as u32);
    let mut m = Matrix::zeros(size, size);
    for i in 0..size {
        let x = State::from_index(i, n, k);
        for j in 0..size {
            m.set(i, j, brute_force_entry(&x, &State::from_index(j, n, k))?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn permutation_enumeration_is_complete() {
        let mut count = 0;
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(4, |p| {
            count += 1;
            seen.insert(p.to_vec());
        });
        assert_eq!((count, seen.len()), (24, 24));
    }

    #[test]
    fn oracle_reproduces_small_hand_values() {
        let st = |s: &str, k| State::parse(s, k).unwrap();
        assert_eq!(brute_force_entry(&st("00", 2), &st("00", 2)).unwrap(), ratio(3, 8));
        assert_eq!(brute_force_entry(&st("01", 2), &st("11", 2)).unwrap(), ratio(1, 4));
        assert_eq!(brute_force_entry(&st("00", 3), &st("11", 3)).unwrap(), ratio(2, 9));
        assert_eq!(brute_force_entry(&st("00", 3), &st("12", 3)).unwrap(), ratio(1, 18));
    }
}
