//! The closed-form kernel against stabilizer enumeration, and the sampler
//! against the kernel.

use chain_core::{brute_force_kernel, build_kernel, burnside_step, Kernel, RngStream, State};
use exact_core::Scalar;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{precondition, VerifierError};
use crate::result::{CheckResult, Checker};

/// Largest state space compared against the enumeration oracle.
pub const ORACLE_MAX_STATES: usize = 256;
pub const GOF_SIGNIFICANCE: f64 = 1e-3;
pub const GOF_MAX_STATES: usize = 27;
pub const GOF_SEED: u64 = 0x5eed_0014;
/// Draws replayed per state to confirm the stream is deterministic.
pub const REPLAY_DRAWS: usize = 1000;

pub fn verify_kernel(n: usize, k: u8) -> Result<CheckResult, VerifierError> {
    let size = (k as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
    if n == 0 || size > ORACLE_MAX_STATES {
        return Err(precondition("kernel-oracle", format!("needs 1 <= k^n <= {ORACLE_MAX_STATES}, got k={k}, n={n}")));
    }
    let kernel = build_kernel(n, k)?;
    let oracle = brute_force_kernel(n, k)?;
    let mut c = Checker::new("kernel-oracle").param("k", k).param("n", n);
    let bad = (0..size * size).find(|&i| kernel.entry(i / size, i % size) != *oracle.get(i / size, i % size));
    c.batch((size * size) as u64, bad.map(|i| {
        let (x, y) = (i / size, i % size);
        format!("K({}, {}) = {} but enumeration gives {}", kernel.state(x), kernel.state(y), kernel.entry(x, y), oracle.get(x, y))
    }));
    let inv = kernel.check_invariants();
    c.check(inv.is_ok(), || format!("kernel invariants: {}", inv.unwrap_err()));
    Ok(c.finish(format!("{} entries", size * size)))
}

/// Pearson statistic and p-value of observed counts against a kernel row,
/// over the support of the row. Draws outside the support give `p = 0`.
pub fn row_gof(kernel: &Kernel, x: usize, counts: &[u64]) -> (f64, f64) {
    let total: u64 = counts.iter().sum();
    let row = kernel.row(x);
    let mut stat = 0.0;
    let mut support = 0usize;
    for (p, &obs) in row.iter().zip(counts) {
        let p = Scalar::to_f64(p);
        if p == 0.0 {
            if obs > 0 {
                return (f64::INFINITY, 0.0);
            }
            continue;
        }
        support += 1;
        let e = p * total as f64;
        stat += (obs as f64 - e).powi(2) / e;
    }
    if support <= 1 {
        return (0.0, 1.0);
    }
    let dist = ChiSquared::new((support - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

fn one_step_counts(kernel: &Kernel, x: &State, draws: u64, seed: u64) -> Vec<u64> {
    let mut rng = RngStream::new(seed, x.index() as u64);
    let mut counts = vec![0u64; kernel.size()];
    for _ in 0..draws {
        counts[burnside_step(x, &mut rng).index()] += 1;
    }
    counts
}

/// One-step frequencies from every state against the exact row, and a
/// replay of each state's stream.
pub fn verify_sampler_gof(n: usize, k: u8, draws: u64, seed: u64) -> Result<CheckResult, VerifierError> {
    let size = (k as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
    if n == 0 || size > GOF_MAX_STATES || draws == 0 {
        return Err(precondition("sampler-gof", format!("needs 1 <= k^n <= {GOF_MAX_STATES} and draws > 0, got k={k}, n={n}")));
    }
    let kernel = build_kernel(n, k)?;
    let mut c = Checker::new("sampler-gof").param("k", k).param("n", n).param("draws", draws).param("seed", seed);
    let results: Vec<(State, f64, f64, bool)> = (0..size)
        .into_par_iter()
        .map(|i| {
            let x = kernel.state(i);
            let counts = one_step_counts(&kernel, &x, draws, seed);
            let (stat, p) = row_gof(&kernel, i, &counts);
            let mut a = RngStream::new(seed, i as u64);
            let mut b = RngStream::new(seed, i as u64);
            let replay = (0..REPLAY_DRAWS).all(|_| burnside_step(&x, &mut a) == burnside_step(&x, &mut b));
            (x, stat, p, replay)
        })
        .collect();
    let mut min_p: f64 = 1.0;
    for (x, stat, p, replay) in &results {
        c.check(*p >= GOF_SIGNIFICANCE, || format!("from {x}: chi-square {stat:.2}, p = {p:.2e}"));
        c.check(*replay, || format!("from {x}: replay diverged"));
        min_p = min_p.min(*p);
    }
    let first = kernel.state(0);
    let again = one_step_counts(&kernel, &first, draws, seed);
    c.check(again == one_step_counts(&kernel, &first, draws, seed), || "repeated run differs".into());
    Ok(c.finish(format!("{size} start states, smallest p-value {min_p:.3}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kernels_match_enumeration() {
        for (n, k) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
            let r = verify_kernel(n, k).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_kernel(9, 2).is_err());
    }

    #[test]
    fn gof_detects_a_wrong_row() {
        let k = build_kernel(2, 2).unwrap();
        let mut counts = vec![0u64; 4];
        counts[0] = 10_000;
        let (_, p) = row_gof(&k, 0, &counts);
        assert!(p < GOF_SIGNIFICANCE);
        let exact: Vec<u64> = k.row(0).iter().map(|p| (Scalar::to_f64(p) * 16_000.0).round() as u64).collect();
        assert!(row_gof(&k, 0, &exact).1 > 0.5);
    }

    #[test]
    fn sampler_two_coordinates() {
        let r = verify_sampler_gof(2, 2, 20_000, GOF_SEED).unwrap();
        assert!(r.passed(), "{r}");
    }
}
