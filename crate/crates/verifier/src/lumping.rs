//! Lumpings of the binary chain: marginals on coordinate subsets, the orbit
//! chain and its Chebyshev eigenvectors, and the one-coordinate tensor
//! identity `K_n (I^{⊗(n-1)} ⊗ K_1) = K_{n-1} ⊗ K_1`.

use chain_core::{build_kernel, lump_kernel_to_coordinates, lump_to_orbits, Kernel, RngStream};
use exact_core::Rational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use spectral::{beta, chebyshev_vector};

use crate::error::{precondition, VerifierError};
use crate::multiplicity::subsets;
use crate::result::{CheckResult, Checker};

/// Up to this `n` every coordinate subset is lumped.
pub const ALL_SUBSETS_MAX_N: usize = 5;
/// Random subsets drawn above [`ALL_SUBSETS_MAX_N`].
pub const SAMPLED_SUBSETS: usize = 24;
/// Ternary kernels are lumped onto all subsets up to this `n`.
pub const TERNARY_MAX_N: usize = 4;
pub const TENSOR_MAX_N: usize = 8;
pub const LUMPING_MAX_N: usize = 10;
pub const LUMPING_SEED: u64 = 0x5eed_1001;

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|m| subsets(n, m)).collect()
}

/// Random subsets in random order, so the restriction order is exercised.
fn sampled_subsets(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = RngStream::new(seed, n as u64);
    (0..count)
        .map(|_| {
            let size = rng.random_range(1..=n);
            let mut coords: Vec<usize> = (1..=n).collect();
            coords.shuffle(&mut rng);
            coords.truncate(size);
            coords
        })
        .collect()
}

fn check_coordinate_lumping(c: &mut Checker, kernel: &Kernel, subsets: &[Vec<usize>]) {
    for s in subsets {
        let r = lump_kernel_to_coordinates(kernel, s);
        c.check(r.is_ok(), || format!("k={}, n={}: {}", kernel.k(), kernel.n(), r.unwrap_err()));
    }
}

/// `T^m` on the orbit chain has eigenvalue `β_{m/2}` for even `m` and 0
/// for odd `m`.
fn check_chebyshev(c: &mut Checker, kernel: &Kernel) -> Result<(), VerifierError> {
    let n = kernel.n();
    let orbit = match lump_to_orbits(kernel) {
        Ok(o) => o,
        Err(e) => {
            c.check(false, || format!("orbit lumping at n={n}: {e}"));
            return Ok(());
        }
    };
    for m in 0..=n {
        let v = chebyshev_vector(n, m)?;
        let lam = if m % 2 == 0 { beta((m / 2) as u64) } else { Rational::zero() };
        let kv = orbit.matrix.mul_vec(&v)?;
        let ok = kv.iter().zip(&v).all(|(a, b)| *a == &lam * b);
        c.check(ok, || format!("n={n}: T^{m} is not a {lam}-eigenvector of the orbit chain"));
    }
    Ok(())
}

fn kron_i128(a: &[i128], ra: usize, b: &[i128], rb: usize) -> Vec<i128> {
    let r = ra * rb;
    let mut out = vec![0i128; r * r];
    for i in 0..ra {
        for j in 0..ra {
            let x = a[i * ra + j];
            if x == 0 {
                continue;
            }
            for p in 0..rb {
                for q in 0..rb {
                    out[(i * rb + p) * r + j * rb + q] = x * b[p * rb + q];
                }
            }
        }
    }
    out
}

fn mat_mul_i128(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// The tensor identity with everything scaled to integers. Coordinate `n`
/// is the most significant digit of a state index, so the usual
/// `A ⊗ B` with `B` on the last coordinate is `kron(B, A)` here.
fn check_tensor_identity(c: &mut Checker, big: &Kernel) -> Result<(), VerifierError> {
    let n = big.n();
    let small = build_kernel(n - 1, 2)?;
    let size = big.size();
    let half = small.size();
    let k1 = [1i128, 1, 1, 1];
    let eye: Vec<i128> = (0..half * half).map(|i| i128::from(i / half == i % half)).collect();
    let a_n: Vec<i128> = big.matrix().raw_data().iter().map(|&x| i128::from(x)).collect();
    let a_small: Vec<i128> = small.matrix().raw_data().iter().map(|&x| i128::from(x)).collect();
    let lhs = mat_mul_i128(&a_n, &kron_i128(&k1, 2, &eye, half), size);
    let rhs = kron_i128(&k1, 2, &a_small, half);
    let (d_big, d_small) = (i128::from(big.matrix().denom()), i128::from(small.matrix().denom()));
    let bad = (0..size * size).find(|&i| lhs[i] * d_small != rhs[i] * d_big);
    c.check(bad.is_none(), || {
        let i = bad.unwrap_or(0);
        format!("n={n}: tensor identity fails at ({}, {})", big.state(i / size), big.state(i % size))
    });
    Ok(())
}

pub fn verify_lumpings(n: usize) -> Result<CheckResult, VerifierError> {
    if n == 0 || n > LUMPING_MAX_N {
        return Err(precondition("lumpings", format!("needs 1 <= n <= {LUMPING_MAX_N}, got {n}")));
    }
    let kernel = build_kernel(n, 2)?;
    let mut c = Checker::new("lumpings").param("n", n);
    let subs = if n <= ALL_SUBSETS_MAX_N { all_subsets(n) } else { sampled_subsets(n, SAMPLED_SUBSETS, LUMPING_SEED) };
    check_coordinate_lumping(&mut c, &kernel, &subs);
    let mut parts = vec![format!("{} binary marginals", subs.len())];
    if n <= TERNARY_MAX_N {
        let k3 = build_kernel(n, 3)?;
        let subs3 = all_subsets(n);
        check_coordinate_lumping(&mut c, &k3, &subs3);
        parts.push(format!("{} ternary marginals", subs3.len()));
    }
    check_chebyshev(&mut c, &kernel)?;
    parts.push(format!("{} Chebyshev eigenvectors", n + 1));
    if (2..=TENSOR_MAX_N).contains(&n) {
        check_tensor_identity(&mut c, &kernel)?;
        parts.push("tensor identity".into());
    }
    Ok(c.finish(parts.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain_core::lump_to_coordinates;

    #[test]
    fn marginal_on_two_and_four() {
        let m = lump_to_coordinates(5, 2, &[2, 4]).unwrap();
        assert_eq!(m, build_kernel(2, 2).unwrap().to_rational_matrix());
    }

    #[test]
    fn small_lumpings_pass() {
        for n in 1..=6 {
            let r = verify_lumpings(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn sampled_subsets_replay() {
        assert_eq!(sampled_subsets(7, 5, 3), sampled_subsets(7, 5, 3));
        assert!(sampled_subsets(7, 50, 3).iter().all(|s| !s.is_empty() && s.len() <= 7));
    }
}
