//! The π-average of `χ²_x(ℓ)` over start states.
//!
//! Averaging the expansion over `x` against `π` turns every squared
//! normalized eigenvector into `1`, leaving
//! `χ²_avg(ℓ) = Σ_{k=1}^{⌊n/2⌋} C(n, 2k) β_k^{2ℓ}`.
//!
//! The log-space mode builds `ln C(n, j)` and `ln β_k` by running
//! compensated sums of small increments, which keeps every term accurate to
//! about `1e-12` in relative terms even at `n = 10^6`.

use chain_core::{orbit_labels, ChainError, Kernel, State};
use exact_core::{binomial, mat_pow, LogReal, NeumaierSum, Rational};
use num_traits::Zero;
use spectral::beta;

use crate::curve::Value;
use crate::distances::{chi2_exact, chi2_of_row};
use crate::error::MixingError;
use crate::expansion::pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvgMode {
    Exact,
    LogSpace,
}

pub fn chi2_avg(n: usize, l: u64, mode: AvgMode) -> Result<Value, MixingError> {
    match mode {
        AvgMode::Exact => chi2_avg_exact(n, l).map(Value::Exact),
        AvgMode::LogSpace => chi2_avg_log(n as u64, l).map(Value::Log),
    }
}

pub fn chi2_avg_exact(n: usize, l: u64) -> Result<Rational, MixingError> {
    if l == 0 {
        return Err(MixingError::ZeroSteps);
    }
    Ok((1..=n / 2)
        .map(|k| Rational::from_integer(binomial(n as u64, 2 * k as i64)) * pow(&beta(k as u64), 2 * l))
        .sum())
}

/// `ln` of each term `C(n, 2k) β_k^{2ℓ}`, `k = 1..=⌊n/2⌋`.
pub fn chi2_avg_log_terms(n: u64, l: u64) -> Vec<f64> {
    let mut log_binom = NeumaierSum::default();
    // ln(C(2k, k) / 4^k) = Σ_{i ≤ k} ln(1 - 1/(2i)), so ln β_k is twice that.
    let mut log_half_beta = NeumaierSum::default();
    let mut out = Vec::with_capacity((n / 2) as usize);
    for j in 0..n {
        log_binom.add(((n - j) as f64 / (j + 1) as f64).ln());
        let c = j + 1;
        if c % 2 == 0 {
            let k = c / 2;
            log_half_beta.add((-1.0 / (2 * k) as f64).ln_1p());
            out.push(log_binom.value() + 4.0 * l as f64 * log_half_beta.value());
        }
    }
    out
}

pub fn chi2_avg_log(n: u64, l: u64) -> Result<LogReal, MixingError> {
    if l == 0 {
        return Err(MixingError::ZeroSteps);
    }
    Ok(LogReal::sum(chi2_avg_log_terms(n, l).into_iter().map(LogReal::from_log)))
}

/// `Σ_x π(x) χ²_x(ℓ)` straight from the rows of `K^ℓ`.
pub fn chi2_avg_definition(kernel: &Kernel, l: u64) -> Result<Rational, MixingError> {
    let p = mat_pow(&kernel.to_rational_matrix(), l).map_err(ChainError::from)?;
    let pi = kernel.stationary();
    Ok((0..kernel.size()).map(|x| &pi[x] * chi2_of_row(p.row(x), &pi)).sum())
}

/// `(1/Z) Σ_i χ²_{O_i}(ℓ)`, one representative per orbit.
pub fn chi2_avg_by_orbits(kernel: &Kernel, l: u64) -> Result<Rational, MixingError> {
    let labels = orbit_labels(kernel.n(), kernel.k());
    let mut total = Rational::zero();
    for label in &labels {
        total += chi2_exact(kernel, &State::from_counts(label)?, l)?;
    }
    Ok(total / Rational::from_integer(labels.len().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain_core::build_kernel;
    use exact_core::{ratio, LogReal, Sign};

    #[test]
    fn small_examples() {
        assert_eq!(chi2_avg_exact(2, 1).unwrap(), ratio(1, 16));
        assert_eq!(chi2_avg_exact(4, 1).unwrap(), ratio(3, 8) + ratio(81, 4096));
        assert_eq!(chi2_avg_exact(1, 3).unwrap(), Rational::zero());
    }

    #[test]
    fn zero_steps_is_rejected_in_both_modes() {
        assert_eq!(chi2_avg(4, 0, AvgMode::Exact), Err(MixingError::ZeroSteps));
        assert_eq!(chi2_avg(4, 0, AvgMode::LogSpace), Err(MixingError::ZeroSteps));
    }

    #[test]
    fn formula_matches_definition_and_orbit_average() {
        for n in 1..=5 {
            let k = build_kernel(n, 2).unwrap();
            for l in 1..=3 {
                let f = chi2_avg_exact(n, l).unwrap();
                assert_eq!(f, chi2_avg_definition(&k, l).unwrap(), "n={n} l={l}");
                assert_eq!(f, chi2_avg_by_orbits(&k, l).unwrap(), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn log_terms_are_accurate() {
        for n in [2u64, 7, 18, 30] {
            for l in [1u64, 2, 5, 40] {
                let terms = chi2_avg_log_terms(n, l);
                for (i, t) in terms.iter().enumerate() {
                    let k = i as u64 + 1;
                    let exact = Rational::from_integer(binomial(n, 2 * k as i64)) * pow(&beta(k), 2 * l);
                    let e = LogReal::from_rational(&exact).log_magnitude();
                    assert!((t - e).abs() < 1e-10 * e.abs().max(1.0), "n={n} l={l} k={k}: {t} vs {e}");
                }
                let exact = chi2_avg_exact(n as usize, l).unwrap();
                let approx = chi2_avg_log(n, l).unwrap();
                let rel = (approx.log_magnitude() - LogReal::from_rational(&exact).log_magnitude()).abs();
                assert!(rel < 1e-9);
                assert_eq!(approx.sign(), Sign::Positive);
            }
        }
    }

    #[test]
    fn log_mode_is_finite_at_a_million() {
        let v: LogReal = chi2_avg_log(1_000_000, 20_000).unwrap();
        assert!(v.log_magnitude().is_finite());
    }
}
