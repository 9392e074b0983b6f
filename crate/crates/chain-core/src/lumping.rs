//! Orbit lumping and coordinate lumping, both checked with Dynkin's
//! criterion: the mass a state sends into each block must depend only on
//! the block the state sits in.

use std::collections::HashMap;

use exact_core::{BigInt, Matrix, Rational};

use crate::caps::StateCap;
use crate::error::ChainError;
use crate::kernel::{build_kernel_with_cap, Kernel};
use crate::state::State;

/// Orbit labels of `C_k^n`: value-count vectors in decreasing lexicographic order.
/// For `k = 2` label `j` is the orbit of strings with `j` ones.
pub fn orbit_labels(n: usize, k: u8) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=left).rev() {
            prefix.push(first);
            rec(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k as usize, &mut Vec::new(), &mut out);
    out
}

/// Kernel of the chain observed through orbit labels.
#[derive(Clone, Debug)]
pub struct OrbitKernel {
    pub n: usize,
    pub k: u8,
    pub labels: Vec<Vec<usize>>,
    pub matrix: Matrix<Rational>,
}

/// Groups `size` states into blocks via `block_of` and returns the block
/// transition matrix, failing if any two states of one block disagree.
fn lump(kernel: &Kernel, blocks: usize, block_of: impl Fn(usize) -> usize) -> Result<Matrix<Rational>, ChainError> {
    let size = kernel.size();
    let a = kernel.matrix();
    let mut first: Vec<Option<(usize, Vec<i64>)>> = vec![None; blocks];
    for x in 0..size {
        let mut mass = vec![0i64; blocks];
        for (y, &v) in a.raw_row(x).iter().enumerate() {
            mass[block_of(y)] += v;
        }
        let b = block_of(x);
        match &first[b] {
            None => first[b] = Some((x, mass)),
            Some((rep, m)) if *m != mass => {
                return Err(ChainError::InvariantViolation(format!(
                    "Dynkin criterion fails: states {rep} and {x} send different mass into the blocks"
                )))
            }
            Some(_) => {}
        }
    }
    let d = BigInt::from(a.denom());
    let mut out = Matrix::zeros(blocks, blocks);
    for (b, entry) in first.into_iter().enumerate() {
        let (_, mass) = entry.ok_or_else(|| ChainError::InvariantViolation(format!("block {b} is empty")))?;
        for (c, m) in mass.into_iter().enumerate() {
            out.set(b, c, Rational::new(m.into(), d.clone()));
        }
    }
    Ok(out)
}

/// Lumps a kernel onto its orbits.
pub fn lump_to_orbits(kernel: &Kernel) -> Result<OrbitKernel, ChainError> {
    let labels = orbit_labels(kernel.n(), kernel.k());
    let index: HashMap<Vec<usize>, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let of: Vec<usize> = (0..kernel.size()).map(|x| index[&kernel.state(x).counts()]).collect();
    let matrix = lump(kernel, labels.len(), |x| of[x])?;
    Ok(OrbitKernel { n: kernel.n(), k: kernel.k(), labels, matrix })
}

fn validate_subset(subset: &[usize], n: usize) -> Result<(), ChainError> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if subset.is_empty() || sorted.len() != subset.len() || sorted.iter().any(|&j| j == 0 || j > n) {
        return Err(ChainError::InvalidSubset { subset: subset.to_vec(), n });
    }
    Ok(())
}

/// Lumps an already built kernel onto the coordinates in `subset`
/// (1-based; the restricted state lists them in the given order) and
/// checks the result equals the kernel with `|subset|` coordinates.
pub fn lump_kernel_to_coordinates(kernel: &Kernel, subset: &[usize]) -> Result<Matrix<Rational>, ChainError> {
    validate_subset(subset, kernel.n())?;
    let m = subset.len();
    let k = kernel.k();
    let blocks = (k as usize).pow(m as u32);
    let of: Vec<usize> = (0..kernel.size()).map(|x| kernel.state(x).restrict(subset).index()).collect();
    let marginal = lump(kernel, blocks, |x| of[x])?;
    let small = build_kernel_with_cap(m, k, &StateCap { binary: usize::MAX, alphabet: usize::MAX })?;
    if marginal != small.to_rational_matrix() {
        return Err(ChainError::InvariantViolation(format!(
            "marginal on {subset:?} differs from the {m}-coordinate kernel"
        )));
    }
    Ok(marginal)
}

/// Builds the `(n, k)` kernel and lumps it onto `subset`.
pub fn lump_to_coordinates(n: usize, k: u8, subset: &[usize]) -> Result<Matrix<Rational>, ChainError> {
    validate_subset(subset, n)?;
    let kernel = crate::kernel::build_kernel(n, k)?;
    lump_kernel_to_coordinates(&kernel, subset)
}

/// Restricted state for a subset, exposed for callers grouping by hand.
pub fn restrict_index(x: &State, subset: &[usize]) -> usize {
    x.restrict(subset).index()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build_kernel;
    use exact_core::{rat_int, ratio};

    #[test]
    fn orbit_labels_for_binary_are_ones_counts() {
        let labels = orbit_labels(3, 2);
        assert_eq!(labels, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(orbit_labels(2, 3).len(), 6);
    }

    #[test]
    fn binary_orbit_chain_on_two_coordinates() {
        let ok = lump_to_orbits(&build_kernel(2, 2).unwrap()).unwrap();
        assert_eq!(ok.matrix.rows(), 3);
        let pi = vec![ratio(1, 3); 3];
        assert_eq!(ok.matrix.vec_mul(&pi).unwrap(), pi);
        assert_eq!(ok.matrix.row(1), &[ratio(1, 4), ratio(1, 2), ratio(1, 4)]);
    }

    #[test]
    fn ternary_orbit_chain_is_stochastic() {
        let ok = lump_to_orbits(&build_kernel(2, 3).unwrap()).unwrap();
        assert_eq!(ok.matrix.rows(), 6);
        for r in 0..6 {
            assert_eq!(ok.matrix.row(r).iter().sum::<Rational>(), rat_int(1));
        }
    }

    #[test]
    fn coordinate_marginals() {
        let k2 = build_kernel(2, 2).unwrap().to_rational_matrix();
        assert_eq!(lump_to_coordinates(3, 2, &[1, 3]).unwrap(), k2);
        let single = lump_to_coordinates(4, 3, &[2]).unwrap();
        assert!(single.data().iter().all(|e| *e == ratio(1, 3)));
        let full = build_kernel(3, 2).unwrap();
        assert_eq!(lump_kernel_to_coordinates(&full, &[1, 2, 3]).unwrap(), full.to_rational_matrix());
    }

    #[test]
    fn bad_subsets_are_rejected() {
        for s in [vec![], vec![0], vec![4], vec![1, 1]] {
            assert!(matches!(lump_to_coordinates(3, 2, &s), Err(ChainError::InvalidSubset { .. })));
        }
    }
}
