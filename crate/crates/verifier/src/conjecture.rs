//! The conjectured expansion of the binary kernel in the letters
//!
//! ```text
//! p+ = [[1/2, 1/2], [1/2, 1/2]]   p- = [[1/2, -1/2], [-1/2, 1/2]]   p+h = [[1/2, -1/2], [1/2, -1/2]]
//! ```
//!
//! (rows indexed by the current value): `K_n = Σ_{x+y+z=n} c_{y,z} f(x,y,z)`,
//! where `f(x,y,z)` sums the tensor products of all words with `x` letters
//! `p+`, `y` letters `p-` and `z` letters `p+h`, and
//! `c_{y,z} = (y! z! / ((y/2)! (z/2)! ((y+z)/2)! 2^{y+z}))^2` for `y, z`
//! even and 0 otherwise.
//!
//! Each letter contributes `±1/2` at a coordinate pair `(a, b)`: `p-` has
//! sign `+` iff `a = b`, and `p+h` has sign `+` iff `b = 0`. So the sum over
//! words at an entry with pair counts `n_ab` is the coefficient of
//! `u^y v^z` in `2^{-n} Π_{ab} (1 + s⁻_ab u + sʰ_ab v)^{n_ab}`, and entries
//! are computed once per pair-count class.

use std::collections::HashMap;

use chain_core::{build_kernel, PairCounts};
use exact_core::{factorial, BigInt, Rational};
use num_traits::{ToPrimitive, Zero};

use crate::error::{precondition, VerifierError};
use crate::result::{CheckResult, Checker};

pub const CONJECTURE_MAX_N: usize = 8;
/// Up to this `n` the expansion is also built by literally enumerating all
/// `3^n` words and forming their tensor products.
pub const LITERAL_MAX_N: usize = 4;

/// The conjectured coefficient `c_{y,z}`.
pub fn c_coefficient(y: usize, z: usize) -> Rational {
    if y % 2 == 1 || z % 2 == 1 {
        return Rational::zero();
    }
    let f = |m: usize| factorial(m as u64);
    let base = Rational::new(
        f(y) * f(z),
        f(y / 2) * f(z / 2) * f((y + z) / 2) * (BigInt::from(1) << (y + z)),
    );
    &base * &base
}

/// Letter signs at a coordinate pair `(a, b)`: `(p-, p+h)`.
fn signs(a: usize, b: usize) -> (i64, i64) {
    (if a == b { 1 } else { -1 }, if b == 0 { 1 } else { -1 })
}

/// Dense coefficients of a polynomial in `u, v`, indexed `[y][z]`.
type Poly = Vec<Vec<BigInt>>;

fn poly_mul(p: &Poly, su: i64, sv: i64, deg: usize) -> Poly {
    let mut out = vec![vec![BigInt::zero(); deg + 1]; deg + 1];
    for y in 0..=deg {
        for z in 0..=deg - y {
            let c = &p[y][z];
            if c.is_zero() {
                continue;
            }
            out[y][z] += c;
            if y < deg {
                out[y + 1][z] += c * su;
            }
            if z < deg - y {
                out[y][z + 1] += c * sv;
            }
        }
    }
    out
}

/// `Σ_{y,z} c_{y,z} [u^y v^z] 2^{-n} Π (1 + s⁻ u + sʰ v)^{n_ab}` for pair
/// counts `[n00, n01, n10, n11]`.
pub fn expansion_entry(counts: [usize; 4]) -> Rational {
    let n: usize = counts.iter().sum();
    let mut p: Poly = vec![vec![BigInt::zero(); n + 1]; n + 1];
    p[0][0] = BigInt::from(1);
    for (idx, &cnt) in counts.iter().enumerate() {
        let (su, sv) = signs(idx / 2, idx % 2);
        for _ in 0..cnt {
            p = poly_mul(&p, su, sv, n);
        }
    }
    let mut total = Rational::zero();
    for y in (0..=n).step_by(2) {
        for z in (0..=n - y).step_by(2) {
            if !p[y][z].is_zero() {
                total += c_coefficient(y, z) * Rational::from_integer(p[y][z].clone());
            }
        }
    }
    total / Rational::from_integer(BigInt::from(1) << n)
}

/// The expansion as a dense matrix, summing tensor products word by word.
/// Doubled letters are used so every entry stays an integer: each word
/// contributes `Π (±1)` and the result is divided by `2^n` at the end.
pub fn literal_expansion(n: usize) -> Vec<Rational> {
    let size = 1usize << n;
    let mut acc = vec![Rational::zero(); size * size];
    let words = 3usize.pow(n as u32);
    for w in 0..words {
        let letters: Vec<usize> = (0..n).map(|i| w / 3usize.pow(i as u32) % 3).collect();
        let y = letters.iter().filter(|&&l| l == 1).count();
        let z = letters.iter().filter(|&&l| l == 2).count();
        let c = c_coefficient(y, z);
        if c.is_zero() {
            continue;
        }
        for x in 0..size {
            for t in 0..size {
                let mut sgn = 1i64;
                for (i, &l) in letters.iter().enumerate() {
                    let (a, b) = (x >> i & 1, t >> i & 1);
                    let (sm, sh) = signs(a, b);
                    sgn *= match l {
                        0 => 1,
                        1 => sm,
                        _ => sh,
                    };
                }
                acc[x * size + t] += &c * Rational::from_integer(BigInt::from(sgn));
            }
        }
    }
    let scale = Rational::from_integer(BigInt::from(1) << n);
    acc.into_iter().map(|v| v / &scale).collect()
}

pub fn verify_pplus_conjecture(n: usize) -> Result<CheckResult, VerifierError> {
    if n == 0 || n > CONJECTURE_MAX_N {
        return Err(precondition("pplus-conjecture", format!("needs 1 <= n <= {CONJECTURE_MAX_N}, got {n}")));
    }
    let kernel = build_kernel(n, 2)?;
    let size = kernel.size();
    let a = kernel.matrix();
    let denom = Rational::from_integer(BigInt::from(a.denom()));
    let mut c = Checker::new("pplus-conjecture").param("n", n);

    let mut cache: HashMap<[usize; 4], Option<i64>> = HashMap::new();
    let states: Vec<_> = (0..size).map(|i| kernel.state(i)).collect();
    let mut witness = None;
    for (x, sx) in states.iter().enumerate() {
        for (y, sy) in states.iter().enumerate() {
            let pc = PairCounts::new(sx, sy)?;
            let key = [pc.get(0, 0), pc.get(0, 1), pc.get(1, 0), pc.get(1, 1)];
            let expected = *cache.entry(key).or_insert_with(|| {
                let v = expansion_entry(key) * &denom;
                v.is_integer().then(|| v.to_integer().to_i64()).flatten()
            });
            if witness.is_none() && expected != Some(a.raw(x, y)) {
                witness = Some(format!("entry ({sx}, {sy}): expansion differs from K = {}", kernel.entry(x, y)));
            }
        }
    }
    c.batch((size * size) as u64, witness);

    if n <= LITERAL_MAX_N {
        let lit = literal_expansion(n);
        let bad = (0..size * size).find(|&i| lit[i] != kernel.entry(i / size, i % size));
        c.check(bad.is_none(), || {
            let i = bad.unwrap_or(0);
            format!("word-by-word expansion differs at ({}, {})", states[i / size], states[i % size])
        });
    }

    let coeffs: Vec<String> = (0..=n)
        .step_by(2)
        .flat_map(|y| (0..=n - y).step_by(2).map(move |z| (y, z)))
        .map(|(y, z)| format!("c({y},{z})={}", c_coefficient(y, z)))
        .collect();
    Ok(c.finish(format!("{} pair-count classes, {}", cache.len(), coeffs.join(" "))))
}
