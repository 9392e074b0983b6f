//! Certified eigenvalue multiplicities.
//!
//! For a reversible kernel `K = A / D` and a rational `λ = p/q`, the
//! multiplicity is `N - rank(qA - pD·I)`. Reduction modulo a prime can
//! only lose rank, which gives an upper bound on the multiplicity. A family
//! of vectors proven to be `λ`-eigenvectors gives a lower bound through its
//! own rank modulo a prime. When the two bounds meet, the value is exact.

use chain_core::{build_kernel, Kernel, State};
use exact_core::{integer_rank, nullspace, rank_mod_p, BigInt, Rational, ScaledMatrix, CERT_PRIMES};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::VerifierError;

/// Largest `k^n0` for which the eigenspace of the `n0`-coordinate kernel
/// is computed exactly and lifted into larger kernels.
pub const LIFT_MAX_STATES: usize = 128;

/// Largest state space for the extra Bareiss rank, used as a cross-check.
pub const EXACT_RANK_MAX_STATES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub lower: usize,
    pub upper: usize,
    /// Bareiss rank over the integers, when the state space is small.
    pub exact: Option<usize>,
    /// Number of primes used before the bounds met (or all of them).
    pub primes_used: usize,
}

impl Multiplicity {
    pub fn certified(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

fn reduce(x: &BigInt, p: u64) -> i128 {
    x.mod_floor(&BigInt::from(p)).to_i128().expect("residue fits")
}

fn split(lambda: &Rational) -> (BigInt, BigInt) {
    (lambda.numer().clone(), lambda.denom().clone())
}

/// `qA - pD·I` modulo `prime`, row major.
fn shifted_mod(a: &ScaledMatrix, lambda: &Rational, prime: u64) -> Vec<i128> {
    let (p, q) = split(lambda);
    let pm = i128::from(prime);
    let q = reduce(&q, prime);
    let pd = reduce(&(p * a.denom()), prime);
    let n = a.rows();
    let mut out: Vec<i128> = a.raw_data().par_iter().map(|&x| (i128::from(x).rem_euclid(pm) * q) % pm).collect();
    for i in 0..n {
        out[i * n + i] = (out[i * n + i] - pd).rem_euclid(pm);
    }
    out
}

fn family_mod(family: &[Vec<BigInt>], prime: u64) -> Vec<i128> {
    family.iter().flat_map(|row| row.iter().map(|x| reduce(x, prime))).collect()
}

/// Exact `N - rank(qA - pD·I)` by fraction-free elimination.
pub fn exact_multiplicity(a: &ScaledMatrix, lambda: &Rational) -> usize {
    let (p, q) = split(lambda);
    let n = a.rows();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = &q * a.raw(r, c);
                    if r == c {
                        v - &p * a.denom()
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    n - integer_rank(rows)
}

/// Sandwiches the multiplicity of `lambda` between the rank of `family`
/// (rows already proven to be eigenvectors) and the modular corank.
pub fn certify_multiplicity(a: &ScaledMatrix, lambda: &Rational, family: &[Vec<BigInt>]) -> Multiplicity {
    let n = a.rows();
    let mut lower = 0;
    let mut upper = n;
    let mut used = 0;
    for &prime in &CERT_PRIMES {
        used += 1;
        if !family.is_empty() {
            lower = lower.max(rank_mod_p(&family_mod(family, prime), family.len(), n, prime));
        }
        upper = upper.min(n - rank_mod_p(&shifted_mod(a, lambda, prime), n, n, prime));
        if lower == upper {
            break;
        }
    }
    let exact = (n <= EXACT_RANK_MAX_STATES).then(|| exact_multiplicity(a, lambda));
    Multiplicity { lower, upper, exact, primes_used: used }
}

/// Exact test of `K u = λ u` for an integer vector `u`.
pub fn is_integer_eigenvector(a: &ScaledMatrix, u: &[BigInt], lambda: &Rational) -> bool {
    let (p, q) = split(lambda);
    let small: Option<Vec<i128>> = u.iter().map(|x| if x.bits() < 64 { x.to_i128() } else { None }).collect();
    let au: Vec<BigInt> = match small {
        Some(s) => a.mul_vec_i128(&s).into_iter().map(BigInt::from).collect(),
        None => a.mul_vec_big(u),
    };
    let scale = p * a.denom();
    au.iter().zip(u).all(|(l, x)| l * &q == x * &scale)
}

/// Integer multiple of a rational vector with coprime entries.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// All `m`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            if n - j + 1 < m - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, m, &mut Vec::new(), &mut out);
    out
}

/// `λ`-eigenvectors of the `n`-coordinate kernel obtained from smaller
/// kernels. If `K_{n0} v = λ v`, then `x ↦ v(x_S)` is a `λ`-eigenvector of
/// `K_n` for every `n0`-subset `S`, because the chain seen through the
/// coordinates in `S` is again the Burnside chain on `n0` coordinates.
/// Callers still check the lifts directly with [`first_non_eigenvector`].
pub fn lifted_eigenvectors(kernel: &Kernel, lambda: &Rational) -> Result<Vec<Vec<BigInt>>, VerifierError> {
    let (n, k) = (kernel.n(), kernel.k());
    let states: Vec<State> = (0..kernel.size()).map(|i| kernel.state(i)).collect();
    let mut family = Vec::new();
    for n0 in 1..=n {
        if (k as usize).pow(n0 as u32) > LIFT_MAX_STATES {
            break;
        }
        let small = build_kernel(n0, k)?;
        let shifted = small.to_rational_matrix().shift_diagonal(lambda)?;
        let null: Vec<Vec<BigInt>> = nullspace(&shifted).iter().map(|v| primitive(v)).collect();
        if null.is_empty() {
            continue;
        }
        for s in subsets(n, n0) {
            let pos: Vec<usize> = states.iter().map(|x| x.restrict(&s).index()).collect();
            for v in &null {
                family.push(pos.iter().map(|&j| v[j].clone()).collect::<Vec<_>>());
            }
        }
    }
    Ok(family)
}

/// Index of the first vector of `family` that is not a `λ`-eigenvector.
pub fn first_non_eigenvector(a: &ScaledMatrix, family: &[Vec<BigInt>], lambda: &Rational) -> Option<usize> {
    family.par_iter().position_first(|u| !is_integer_eigenvector(a, u, lambda))
}
