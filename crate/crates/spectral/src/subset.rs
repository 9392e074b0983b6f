//! Subset vectors `f_S(x) = (-1)^{|x_S|} C(|S|, |x_S|)`.
//!
//! Subsets are bit masks: bit `i - 1` stands for coordinate `i`, matching
//! the state index, so `|x_S|` is a popcount.

use chain_core::State;
use exact_core::binomial_u128;

use crate::eigen::Eigenvalue;

fn value(size: u32, hits: u32) -> i64 {
    let c = binomial_u128(u64::from(size), i64::from(hits)) as i64;
    if hits % 2 == 0 {
        c
    } else {
        -c
    }
}

/// `f_S(x)` for a binary state.
pub fn f_subset_eval(mask: u64, x: &State) -> i64 {
    let hits = x.digits().iter().enumerate().filter(|(i, &d)| d == 1 && mask >> i & 1 == 1).count() as u32;
    value(mask.count_ones(), hits)
}

/// All `2^n` values of `f_S`.
pub fn f_subset_vector(n: usize, mask: u64) -> Vec<i64> {
    let size = mask.count_ones();
    (0..1u64 << n).map(|x| value(size, (x & mask).count_ones())).collect()
}

/// Even subsets carry `β_{|S|/2}`, odd ones are killed by the kernel.
pub fn subset_eigenvalue(mask: u64) -> Eigenvalue {
    let s = mask.count_ones() as usize;
    if s % 2 == 0 {
        Eigenvalue::Beta((s / 2) as u64)
    } else {
        Eigenvalue::Zero
    }
}

/// Masks of all `m`-subsets of `n` coordinates, in increasing numeric order.
pub fn subsets_of_size(n: usize, m: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|s| s.count_ones() as usize == m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> State {
        State::parse(s, 2).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let pair = 0b11;
        assert_eq!(f_subset_eval(pair, &st("01")), -2);
        assert_eq!(f_subset_eval(pair, &st("10")), -2);
        assert_eq!(f_subset_eval(pair, &st("00")), 1);
        assert_eq!(f_subset_eval(pair, &st("11")), 1);
        assert_eq!(f_subset_eval(0, &st("0110")), 1);
        assert_eq!(f_subset_eval(0b1111, &st("0110")), 6);
        assert_eq!(f_subset_eval(0b1111, &st("0111")), -4);
    }

    #[test]
    fn vector_agrees_with_pointwise_evaluation() {
        let n = 5;
        for mask in 0..1u64 << n {
            let v = f_subset_vector(n, mask);
            for (i, &fx) in v.iter().enumerate() {
                assert_eq!(fx, f_subset_eval(mask, &State::from_index(i, n, 2)));
            }
        }
    }

    #[test]
    fn subset_sizes() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(4, 2)[0], 0b0011);
        assert_eq!(subset_eigenvalue(0b101), Eigenvalue::Beta(1));
        assert_eq!(subset_eigenvalue(0b111), Eigenvalue::Zero);
    }
}
