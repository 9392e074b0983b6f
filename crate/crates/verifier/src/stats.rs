//! Product identities among pair vectors, stationary alternation moments,
//! and the Monte Carlo fit of `T/(n-1)` against `2U(1-U)`.

use std::collections::HashMap;

use exact_core::{binomial, BigInt, Rational};
use num_traits::Zero;
use spectral::f_subset_vector;
use statistics::{
    alternation_distribution, alternation_histogram, stationary_alternation_mean, stationary_alternation_variance, FitReport,
    DEFAULT_BINS,
};

use crate::error::{precondition, VerifierError};
use crate::result::{CheckResult, Checker};

pub const IDENTITIES_MAX_N: usize = 8;
pub const MOMENTS_MAX_N: usize = 8;
pub const FIT_SEED: u64 = 0x5eed_0200;
/// Bound on the sup CDF distance to `1 - √(1 - 2t)`.
pub const CDF_TOLERANCE: f64 = 0.02;
/// Allowed gap between the sampled and exact-law CDF distances.
pub const CDF_AGREEMENT: f64 = 0.01;

struct Table {
    n: usize,
    values: HashMap<u64, Vec<i64>>,
}

impl Table {
    fn new(n: usize) -> Self {
        let values = (0..1u64 << n).filter(|m| m.count_ones() <= 4).map(|m| (m, f_subset_vector(n, m))).collect();
        Self { n, values }
    }

    fn f(&self, coords: &[usize], x: usize) -> i64 {
        let mask = coords.iter().fold(0u64, |m, &c| m | 1 << (c - 1));
        self.values[&mask][x]
    }

    fn states(&self) -> std::ops::Range<usize> {
        0..1 << self.n
    }
}

/// Checks, at every state and every choice of distinct indices,
///
/// * `70 f_ab f_cd = 36 f_abcd - 20 (f_ab + f_cd) + 15 (f_ac + f_ad + f_bc + f_bd) + 14`,
/// * `2 f_ab f_ac = 3 f_bc - (f_ab + f_ac) + 1`,
/// * `f_ab² = 2 - f_ab`,
/// * `3·1{x_i ≠ x_{i+1}} = 1 - f_{i,i+1}`, hence `3T = (n-1) - Σ_i f_{i,i+1}`.
pub fn verify_statistics_identities(n: usize) -> Result<CheckResult, VerifierError> {
    if !(4..=IDENTITIES_MAX_N).contains(&n) {
        return Err(precondition("statistics-identities", format!("needs 4 <= n <= {IDENTITIES_MAX_N}, got {n}")));
    }
    let t = Table::new(n);
    let mut c = Checker::new("statistics-identities").param("n", n);
    let idx: Vec<usize> = (1..=n).collect();

    for &a in &idx {
        for &b in &idx {
            if a == b {
                continue;
            }
            for x in t.states() {
                let ab = t.f(&[a, b], x);
                c.check(ab * ab == 2 - ab, || format!("square identity at (a,b)=({a},{b}), x={x:0n$b}"));
            }
            for &cc in &idx {
                if cc == a || cc == b {
                    continue;
                }
                for x in t.states() {
                    let (ab, ac, bc) = (t.f(&[a, b], x), t.f(&[a, cc], x), t.f(&[b, cc], x));
                    c.check(2 * ab * ac == 3 * bc - ab - ac + 1, || {
                        format!("3/2 identity at (a,b,c)=({a},{b},{cc}), x={x:0n$b}")
                    });
                }
                for &d in &idx {
                    if d == a || d == b || d == cc {
                        continue;
                    }
                    let bad = t.states().find(|&x| {
                        let lhs = 70 * t.f(&[a, b], x) * t.f(&[cc, d], x);
                        let rhs = 36 * t.f(&[a, b, cc, d], x) - 20 * (t.f(&[a, b], x) + t.f(&[cc, d], x))
                            + 15 * (t.f(&[a, cc], x) + t.f(&[a, d], x) + t.f(&[b, cc], x) + t.f(&[b, d], x))
                            + 14;
                        lhs != rhs
                    });
                    c.check(bad.is_none(), || {
                        format!("18/35 identity at (a,b,c,d)=({a},{b},{cc},{d}), x={:0n$b}", bad.unwrap_or(0))
                    });
                }
            }
        }
    }

    for x in t.states() {
        let mut sum_f = 0;
        let mut alternations = 0;
        for i in 1..n {
            let f = t.f(&[i, i + 1], x);
            let differ = i64::from((x >> (i - 1) & 1) != (x >> i & 1));
            c.check(3 * differ == 1 - f, || format!("pair expansion at i={i}, x={x:0n$b}"));
            sum_f += f;
            alternations += differ;
        }
        c.check(3 * alternations == (n as i64 - 1) - sum_f, || format!("alternation expansion at x={x:0n$b}"));
    }
    Ok(c.finish(format!("{} states, all ordered index choices", 1usize << n)))
}

/// Mean and variance of `T` under `π` by summing over all `2^n` states,
/// against `(n-1)/3` and `(n² + 10n - 14)/45`, and the run-count law of
/// `T` against the same sums.
pub fn verify_alternation_moments(n: usize) -> Result<CheckResult, VerifierError> {
    if !(2..=MOMENTS_MAX_N).contains(&n) {
        return Err(precondition("alternation-moments", format!("needs 2 <= n <= {MOMENTS_MAX_N}, got {n}")));
    }
    let mut c = Checker::new("alternation-moments").param("n", n);
    let mut law = vec![Rational::zero(); n];
    for x in 0usize..1 << n {
        let ones = x.count_ones() as i64;
        let pi = Rational::new(BigInt::from(1), BigInt::from(n + 1) * binomial(n as u64, ones));
        let t = (x ^ (x >> 1)) & ((1 << (n - 1)) - 1);
        law[t.count_ones() as usize] += pi;
    }
    let moment = |p: u32| -> Rational {
        law.iter().enumerate().map(|(t, q)| q * Rational::from_integer(BigInt::from(t).pow(p))).sum()
    };
    let mean = moment(1);
    let var = moment(2) - &mean * &mean;
    let (want_mean, want_var) = (stationary_alternation_mean(n)?, stationary_alternation_variance(n)?);
    c.check(mean == want_mean, || format!("mean {mean}, expected {want_mean}"));
    c.check(var == want_var, || format!("variance {var}, expected {want_var}"));
    let closed = alternation_distribution(n)?;
    c.check(closed == law, || "run-count law differs from the state sum".into());
    Ok(c.finish(format!("mean {mean}, variance {var}")))
}

fn draw(n: usize, samples: u64, seed: u64) -> Result<FitReport, VerifierError> {
    if n < 2 || samples < 2 {
        return Err(precondition("alternation-fit", format!("needs n >= 2 and samples >= 2, got n={n}, samples={samples}")));
    }
    Ok(alternation_histogram(n, samples, DEFAULT_BINS, seed)?.1)
}

/// Sampled mean within 3 standard errors of `1/3`, sampled variance within
/// 10% of `1/45`, and the sampled CDF distance within [`CDF_AGREEMENT`] of
/// the same distance for the exact law at this `n`.
pub fn verify_alternation_fit(n: usize, samples: u64, seed: u64) -> Result<CheckResult, VerifierError> {
    let r = draw(n, samples, seed)?;
    let mut c = Checker::new("alternation-fit").param("n", n).param("samples", samples).param("seed", seed);
    c.check(r.mean_z <= 3.0, || format!("mean {:.5} is {:.2} standard errors from 1/3", r.mean, r.mean_z));
    c.check(r.variance_rel_error <= 0.1, || {
        format!("variance {:.6} is {:.1}% from 1/45", r.variance, 100.0 * r.variance_rel_error)
    });
    if let Some(exact) = r.exact_sup_cdf_all {
        let gap = (r.sup_cdf_all - exact).abs();
        c.check(gap <= CDF_AGREEMENT, || format!("sampled sup CDF {:.4} vs exact law {exact:.4}", r.sup_cdf_all));
    }
    Ok(c.finish(format!(
        "mean {:.5} (z {:.2}), variance {:.6} (1/45 = {:.6})",
        r.mean,
        r.mean_z,
        r.variance,
        1.0 / 45.0
    )))
}

/// Sup distance between the sampled CDF of `T/(n-1)` and `1 - √(1 - 2t)`,
/// required below [`CDF_TOLERANCE`]. The exact finite-`n` distance is
/// reported next to it.
pub fn verify_alternation_cdf(n: usize, samples: u64, seed: u64) -> Result<CheckResult, VerifierError> {
    let r = draw(n, samples, seed)?;
    let mut c = Checker::new("alternation-cdf").param("n", n).param("samples", samples).param("seed", seed);
    let exact = r.exact_sup_cdf_all.map_or_else(|| "not computed".to_string(), |e| format!("{e:.4}"));
    c.check(r.sup_cdf_all < CDF_TOLERANCE, || {
        format!("sup CDF distance {:.4} >= {CDF_TOLERANCE} (exact law at this n: {exact})", r.sup_cdf_all)
    });
    Ok(c.finish(format!("sampled sup {:.4}, exact-law sup {exact}", r.sup_cdf_all)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_at_four_and_five() {
        for n in [4, 5] {
            let r = verify_statistics_identities(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_statistics_identities(3).is_err());
    }

    #[test]
    fn a_wrong_coefficient_fails() {
        // 18/35 replaced by 1/2 breaks the four-index identity at x = 0000.
        let t = Table::new(4);
        let lhs = 70 * t.f(&[1, 2], 0) * t.f(&[3, 4], 0);
        let rhs = 35 * t.f(&[1, 2, 3, 4], 0) - 20 * (t.f(&[1, 2], 0) + t.f(&[3, 4], 0))
            + 15 * (t.f(&[1, 3], 0) + t.f(&[1, 4], 0) + t.f(&[2, 3], 0) + t.f(&[2, 4], 0))
            + 14;
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn moments_small_n() {
        for n in 2..=MOMENTS_MAX_N {
            let r = verify_alternation_moments(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        let r = verify_alternation_moments(4).unwrap();
        assert_eq!(r.summary, "mean 1, variance 14/15");
    }

    #[test]
    fn small_fit_replays() {
        let a = verify_alternation_fit(200, 20_000, 3).unwrap();
        let b = verify_alternation_fit(200, 20_000, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{a}");
    }
}
