//! Binomial identities behind the inner products, and the WZ certificates
//! that prove them, evaluated as exact rationals.
//!
//! * `(1/(c3+c1+1)) Σ_i C(c3,i) / C(c3+c1, i+c2) = 1 / ((c1+1) C(c1,c2))`.
//! * `H̄(m, s) = Σ_{a,b,c} H(m, s, a, b, c) = 1` for `s ≤ m`, with
//!   `H = (-1)^{b+c} C(m-s,a) C(s,b) C(s,c) C(m,a+b) C(m,a+c) (a+b+c)! (m+s-a-b-c)! m! / (s! (2m)!)`.
//! * The level vectors `f_T^{m,ℓ1}`, `f_T^{m,ℓ2}` are orthogonal: a triple
//!   sum over `(i, j1, j2)` vanishes for `ℓ1 ≠ ℓ2`.
//!
//! Each certificate `R` is a rational function with `R·H` (or `R·P`)
//! telescoping: `H(m+1) - H(m) = Σ_v Δ_v (F_v H)`, and likewise for `s`
//! with the `G`s and for `n` with the `Q`s. A certificate is evaluated at
//! the shifted point together with the summand there.

use chain_core::RngStream;
use exact_core::{binomial, factorial, BigInt, Rational};
use num_traits::{One, Zero};
use rand::Rng;

use crate::result::{CheckResult, Checker};

fn cb(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k)
    }
}

fn fact(n: i64) -> BigInt {
    factorial(n as u64)
}

fn sign(e: i64) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Both sides of the single-sum lemma.
pub fn lemma_a1(c1: i64, c2: i64, c3: i64) -> (Rational, Rational) {
    let sum: Rational = (0..=c3).map(|i| Rational::new(cb(c3, i), cb(c3 + c1, i + c2))).sum();
    let lhs = sum / Rational::from_integer(BigInt::from(c3 + c1 + 1));
    let rhs = Rational::new(BigInt::one(), BigInt::from(c1 + 1) * cb(c1, c2));
    (lhs, rhs)
}

/// The summand `H(m, s, a, b, c)`, zero off its support.
pub fn h_summand(m: i64, s: i64, a: i64, b: i64, c: i64) -> Rational {
    if m < 0 || s < 0 || a < 0 || b < 0 || c < 0 {
        return Rational::zero();
    }
    let v = cb(m - s, a) * cb(s, b) * cb(s, c) * cb(m, a + b) * cb(m, a + c);
    if v.is_zero() || m + s - a - b - c < 0 {
        return Rational::zero();
    }
    let num = sign(b + c) * v * fact(a + b + c) * fact(m + s - a - b - c) * fact(m);
    Rational::new(num, fact(s) * fact(2 * m))
}

pub fn h_bar(m: i64, s: i64) -> Rational {
    let mut total = Rational::zero();
    for a in 0..=(m - s).max(0) {
        for b in 0..=s {
            for c in 0..=s {
                total += h_summand(m, s, a, b, c);
            }
        }
    }
    total
}

/// The triple sum whose vanishing gives orthogonality of level vectors.
pub fn level_orthogonality_sum(n: i64, m: i64, l1: i64, l2: i64) -> Rational {
    let mut total = Rational::zero();
    for i in 0..=n - 2 * m {
        let weight = Rational::new(cb(n - 2 * m, i), cb(n, m + i));
        let mut inner = BigInt::zero();
        for j1 in 0..=i {
            for j2 in 0..=i {
                inner += sign(j1 + j2)
                    * cb(2 * m + l1, m + j1)
                    * cb(2 * m + l2, m + j2)
                    * cb(i, j1)
                    * cb(i, j2)
                    * cb(n - 2 * m - i, l1 - j1)
                    * cb(n - 2 * m - i, l2 - j2);
            }
        }
        total += weight * Rational::from_integer(inner);
    }
    total
}

/// The integer summand `P(n, m, ℓ1, ℓ2, i, j1, j2)` of the cleared triple sum.
pub fn p_summand(n: i64, m: i64, l1: i64, l2: i64, i: i64, j1: i64, j2: i64) -> BigInt {
    sign(j1 + j2)
        * cb(2 * m + l1, m + j1)
        * cb(2 * m + l2, m + j2)
        * cb(i, j1)
        * cb(i, j2)
        * cb(n - 2 * m - i, l1 - j1)
        * cb(n - 2 * m - i, l2 - j2)
        * cb(m + i, i)
        * cb(n - m - i, m)
        * BigInt::from(l1 - l2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    Fa,
    Fb,
    Fc,
    Ga,
    Gb,
    Gc,
    Qi,
    Qj1,
    Qj2,
}

impl Certificate {
    pub const H_M: [Certificate; 3] = [Certificate::Fa, Certificate::Fb, Certificate::Fc];
    pub const H_S: [Certificate; 3] = [Certificate::Ga, Certificate::Gb, Certificate::Gc];
    pub const P_N: [Certificate; 3] = [Certificate::Qi, Certificate::Qj1, Certificate::Qj2];

    /// The rational factor `R/H` (or `R/P`) as `(numerator, denominator)`.
    /// `H` certificates read `(m, s, a, b, c)`, `P` certificates read
    /// `(n, m, ℓ1, ℓ2, i, j1, j2)`.
    pub fn ratio_parts(self, p: &[i64]) -> (i128, i128) {
        let v: Vec<i128> = p.iter().map(|&x| i128::from(x)).collect();
        match self {
            Certificate::Fa | Certificate::Fb | Certificate::Fc | Certificate::Ga | Certificate::Gb | Certificate::Gc => {
                let (m, s, a, b, c) = (v[0], v[1], v[2], v[3], v[4]);
                match self {
                    Certificate::Fa => (
                        2 * a * b * c - 2 * a * a * b * c + 4 * a * b * c * m - 2 * a * a * b * c * m + 2 * a * b * c * m * m
                            + a * a * s
                            - a * a * a * s
                            - 2 * a * b * s
                            + a * a * b * s
                            - 2 * a * c * s
                            + a * a * c * s
                            - 2 * a * b * c * s
                            + 2 * a * a * m * s
                            - a * a * a * m * s
                            - 4 * a * b * m * s
                            + a * a * b * m * s
                            - 4 * a * c * m * s
                            + a * a * c * m * s
                            - 2 * a * b * c * m * s
                            + a * a * m * m * s
                            - 2 * a * b * m * m * s
                            - 2 * a * c * m * m * s
                            + 3 * a * s * s
                            - 2 * a * a * s * s
                            + a * b * s * s
                            + a * c * s * s
                            + 6 * a * m * s * s
                            - 2 * a * a * m * s * s
                            + a * b * m * s * s
                            + a * c * m * s * s
                            + 3 * a * m * m * s * s
                            - a * s * s * s
                            - a * m * s * s * s,
                        2 * (-1 + a + b - m) * (-1 + a + c - m) * (1 + 2 * m) * s * (-1 + a - m + s),
                    ),
                    Certificate::Fb => (
                        -2 * a * b + 2 * a * a * b + 2 * a * b * b + 2 * a * b * c + 2 * b * m - 8 * a * b * m
                            + 4 * a * a * b * m
                            - 2 * b * b * m
                            + 4 * a * b * b * m
                            - 2 * b * c * m
                            + 4 * a * b * c * m
                            + 2 * b * b * c * m
                            + 4 * b * m * m
                            - 6 * a * b * m * m
                            - 2 * b * b * m * m
                            - 2 * b * c * m * m
                            + 2 * b * m * m * m
                            - b * s
                            - a * b * s
                            + b * b * s
                            + b * c * s
                            - 2 * b * m * s
                            - a * b * m * s
                            + b * b * m * s
                            + b * c * m * s
                            - b * m * m * s
                            - b * s * s
                            - b * m * s * s,
                        2 * (-1 + a + b - m) * (-1 + a + c - m) * (1 + 2 * m) * s,
                    ),
                    Certificate::Fc => (
                        2 * a * b * c - 2 * b * c * m + 4 * a * b * c * m + 2 * b * c * c * m - 2 * b * c * m * m + c * s
                            - 3 * a * c * s
                            + b * c * s
                            - c * c * s
                            + 4 * c * m * s
                            - 5 * a * c * m * s
                            + b * c * m * s
                            - 3 * c * c * m * s
                            + 3 * c * m * m * s
                            - c * s * s
                            - c * m * s * s,
                        2 * (1 + a + b) * (-1 + a + c - m) * (1 + 2 * m) * s,
                    ),
                    Certificate::Ga => (a, m - s),
                    Certificate::Gb => (
                        a * b - a * a * b - a * b * b - a * b * c - b * m + 2 * a * b * m + b * b * m + b * c * m - b * m * m
                            + b * s
                            - b * b * s
                            - b * c * s
                            + b * s * s,
                        (-1 + b - s) * (1 - c + s) * (-m + s),
                    ),
                    _ => (
                        a * a * c + a * b * c - 2 * a * c * m - b * c * m + c * m * m + a * c * s + b * c * s - c * m * s,
                        (1 + a + b) * (m - s) * (1 - c + s),
                    ),
                }
            }
            _ => {
                let (n, m, l1, l2, i, j1, j2) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
                match self {
                    Certificate::Qi => (
                        -j1 + 2 * i * j1 - i * i * j1 + j2 - 2 * i * j2 + i * i * j2 + 3 * j1 * m - 3 * i * j1 * m - 3 * j2 * m
                            + 3 * i * j2 * m
                            - 2 * j1 * m * m
                            + 2 * j2 * m * m
                            - 2 * j1 * n
                            + 2 * i * j1 * n
                            + 2 * j2 * n
                            - 2 * i * j2 * n
                            + 3 * j1 * m * n
                            - 3 * j2 * m * n
                            - j1 * n * n
                            + j2 * n * n,
                        (l1 - l2) * (-1 + i - j1 + l1 + 2 * m - n) * (-1 + i - j2 + l2 + 2 * m - n),
                    ),
                    Certificate::Qj1 => (-j1 * j1 - j1 * m, (1 + i - j1) * (l1 - l2)),
                    _ => (j2 * j2 + j2 * m, (1 + i - j2) * (l1 - l2)),
                }
            }
        }
    }

    /// `R(p) · summand(p)`, or `None` when the denominator vanishes.
    pub fn value(self, p: &[i64]) -> Option<Rational> {
        let (num, den) = self.ratio_parts(p);
        if den == 0 {
            return None;
        }
        let summand = match self {
            Certificate::Qi | Certificate::Qj1 | Certificate::Qj2 => {
                Rational::from_integer(p_summand(p[0], p[1], p[2], p[3], p[4], p[5], p[6]))
            }
            _ => h_summand(p[0], p[1], p[2], p[3], p[4]),
        };
        Some(Rational::new(num.into(), den.into()) * summand)
    }

    /// Position of the summation variable this certificate shifts.
    fn variable(self) -> usize {
        match self {
            Certificate::Fa | Certificate::Ga => 2,
            Certificate::Fb | Certificate::Gb => 3,
            Certificate::Fc | Certificate::Gc => 4,
            Certificate::Qi => 4,
            Certificate::Qj1 => 5,
            Certificate::Qj2 => 6,
        }
    }
}

fn shifted(p: &[i64], at: usize) -> Vec<i64> {
    let mut q = p.to_vec();
    q[at] += 1;
    q
}

/// `Σ_R [R(p + e_v) - R(p)]` over a certificate triple.
fn telescoped(certs: &[Certificate; 3], p: &[i64]) -> Option<Rational> {
    let mut total = Rational::zero();
    for &r in certs {
        total += r.value(&shifted(p, r.variable()))? - r.value(p)?;
    }
    Some(total)
}

/// Which parameter the telescoping equation moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Telescope {
    /// `H(m+1) - H(m)` against the `F`s.
    M,
    /// `H(s+1) - H(s)` against the `G`s.
    S,
    /// `P(n+1) - P(n)` against the `Q`s.
    N,
}

impl Telescope {
    pub fn certificates(self) -> &'static [Certificate; 3] {
        match self {
            Telescope::M => &Certificate::H_M,
            Telescope::S => &Certificate::H_S,
            Telescope::N => &Certificate::P_N,
        }
    }

    pub fn arity(self) -> usize {
        if self == Telescope::N {
            7
        } else {
            5
        }
    }

    fn lhs(self, p: &[i64]) -> Rational {
        match self {
            Telescope::M => h_summand(p[0] + 1, p[1], p[2], p[3], p[4]) - h_summand(p[0], p[1], p[2], p[3], p[4]),
            Telescope::S => h_summand(p[0], p[1] + 1, p[2], p[3], p[4]) - h_summand(p[0], p[1], p[2], p[3], p[4]),
            Telescope::N => Rational::from_integer(
                p_summand(p[0] + 1, p[1], p[2], p[3], p[4], p[5], p[6]) - p_summand(p[0], p[1], p[2], p[3], p[4], p[5], p[6]),
            ),
        }
    }

    /// `Some(true)` when the equation holds at `p`, `None` when some
    /// certificate has a zero denominator there.
    pub fn holds_at(self, p: &[i64]) -> Option<bool> {
        assert_eq!(p.len(), self.arity(), "wrong number of parameters");
        Some(self.lhs(p) == telescoped(self.certificates(), p)?)
    }

    /// A uniform point of the grid `m ≤ 8`, `s ≤ m`, `a ≤ m-s+1`,
    /// `b, c ≤ s+1` (or `n ≤ 10`, `m ≤ n/2`, `ℓ1 ≠ ℓ2 ≤ n-2m`, `i ≤ n-2m+1`,
    /// `j1, j2 ≤ i+1` for the `Q`s). The ranges reach one step past the
    /// support so boundary terms are exercised.
    pub fn random_point(self, rng: &mut RngStream) -> Vec<i64> {
        if self == Telescope::N {
            loop {
                let n: i64 = rng.random_range(1..=10);
                let m = rng.random_range(0..=n / 2);
                let top = n - 2 * m;
                let (l1, l2) = (rng.random_range(0..=top), rng.random_range(0..=top));
                if l1 == l2 {
                    continue;
                }
                let i = rng.random_range(0..=top + 1);
                return vec![n, m, l1, l2, i, rng.random_range(0..=i + 1), rng.random_range(0..=i + 1)];
            }
        }
        let m: i64 = rng.random_range(0..=8);
        let s = rng.random_range(0..=m);
        vec![m, s, rng.random_range(0..=m - s + 1), rng.random_range(0..=s + 1), rng.random_range(0..=s + 1)]
    }
}

/// Ranges for [`verify_identities_appendix_a`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppendixGrid {
    pub c_max: i64,
    pub h_max: i64,
    pub orthogonality_max_n: i64,
    pub random_points: usize,
    pub seed: u64,
}

impl Default for AppendixGrid {
    fn default() -> Self {
        Self { c_max: 8, h_max: 6, orthogonality_max_n: 10, random_points: 500, seed: 0xa11ce }
    }
}

pub fn verify_identities_appendix_a(grid: AppendixGrid) -> CheckResult {
    let mut c = Checker::new("identities-appendix-a")
        .param("c_max", grid.c_max)
        .param("h_max", grid.h_max)
        .param("n_max", grid.orthogonality_max_n)
        .param("points", grid.random_points)
        .param("seed", grid.seed);

    for c1 in 0..=grid.c_max {
        for c2 in 0..=c1 {
            for c3 in 0..=grid.c_max {
                let (l, r) = lemma_a1(c1, c2, c3);
                c.check(l == r, || format!("single-sum lemma at (c1,c2,c3)=({c1},{c2},{c3}): {l} vs {r}"));
            }
        }
    }

    for m in 0..=grid.h_max {
        for s in 0..=m {
            let h = h_bar(m, s);
            c.check(h.is_one(), || format!("H-bar({m},{s}) = {h}"));
        }
    }

    for n in 0..=grid.orthogonality_max_n {
        for m in 0..=n / 2 {
            for l1 in 0..=n - 2 * m {
                for l2 in 0..=n - 2 * m {
                    if l1 != l2 {
                        let v = level_orthogonality_sum(n, m, l1, l2);
                        c.check(v.is_zero(), || format!("triple sum at (n,m,l1,l2)=({n},{m},{l1},{l2}) is {v}"));
                    }
                }
            }
        }
    }

    let fixed = Certificate::Fa.value(&[3, 2, 1, 1, 1]);
    c.check(fixed == Some(Rational::new((-9).into(), 7.into())), || format!("F_a H at (3,2,1,1,1) is {fixed:?}, expected -9/7"));

    let mut parts = Vec::new();
    for (id, t) in [Telescope::M, Telescope::S, Telescope::N].into_iter().enumerate() {
        let mut rng = RngStream::new(grid.seed, id as u64);
        let (mut ok, mut skipped) = (0usize, 0usize);
        for _ in 0..grid.random_points {
            let p = t.random_point(&mut rng);
            match t.holds_at(&p) {
                None => skipped += 1,
                Some(holds) => {
                    c.check(holds, || format!("{t:?} telescoping fails at {p:?}"));
                    ok += usize::from(holds);
                }
            }
        }
        c.check(ok > 0, || format!("{t:?} telescoping never evaluated"));
        parts.push(format!("{t:?}: {ok} hold, {skipped} skipped"));
    }
    c.finish(format!("certificates {}", parts.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn single_sum_example() {
        assert_eq!(lemma_a1(2, 1, 2), (ratio(1, 6), ratio(1, 6)));
    }

    #[test]
    fn h_bar_base_case() {
        assert_eq!(h_bar(0, 0), Rational::one());
        assert_eq!(h_bar(3, 1), Rational::one());
    }

    #[test]
    fn fixed_certificate_point() {
        let p = [3i64, 2, 1, 1, 1];
        assert_eq!(Certificate::Fa.value(&p), Some(ratio(-9, 7)));
        assert_eq!(h_summand(3, 2, 1, 1, 1), ratio(9, 5));
        // F_a has a pole at a = 2, so the m-equation is a skipped point here.
        assert_eq!(Telescope::M.holds_at(&p), None);
        assert_eq!(Telescope::M.holds_at(&[3, 1, 1, 1, 1]), Some(true));
        assert_eq!(Telescope::S.holds_at(&p), Some(true));
        assert_eq!(Telescope::N.holds_at(&[6, 1, 2, 0, 2, 1, 0]), Some(true));
    }

    #[test]
    fn a_broken_certificate_is_caught() {
        // Dropping F_c from the m-equation must break it somewhere.
        let broken = [Certificate::Fa, Certificate::Fb, Certificate::Fb];
        let p = [3i64, 2, 1, 1, 1];
        let lhs = Telescope::M.lhs(&p);
        assert_ne!(Some(lhs), telescoped(&broken, &p));
    }

    #[test]
    fn orthogonality_sum_vanishes_but_not_on_the_diagonal() {
        assert!(level_orthogonality_sum(6, 1, 1, 3).is_zero());
        assert!(!level_orthogonality_sum(6, 1, 2, 2).is_zero());
    }

    #[test]
    fn full_default_grid() {
        let r = verify_identities_appendix_a(AppendixGrid::default());
        assert!(r.passed(), "{r}");
    }
}
