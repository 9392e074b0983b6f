//! Monte Carlo histograms of `T/(n-1)` under the stationary law.

use std::fmt::Write as _;

use chain_core::{sample_stationary, RngStream};
use exact_core::Scalar;
use rayon::prelude::*;

use crate::alternations::{alternation_distribution, alternations};
use crate::error::StatsError;

pub const DEFAULT_BINS: usize = 50;

/// Draws per RNG stream. Stream `i` produces draws `i * DRAWS_PER_STREAM`
/// onward, so results do not depend on the thread count.
pub const DRAWS_PER_STREAM: u64 = 4096;

/// Largest `n` for which the fit report includes the exact finite-`n` law.
pub const EXACT_LAW_MAX_N: usize = 400;

/// `1 - √(1 - 2t)` on `[0, 1/2]`, clamped outside: the CDF of `2U(1-U)`.
pub fn limit_cdf(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 0.5 {
        1.0
    } else {
        1.0 - (1.0 - 2.0 * t).sqrt()
    }
}

/// `sup_t |G(t) - limit_cdf(t)|` for the step CDF `G` of a discrete law
/// given as `(value, probability)` sorted by value. With `below = Some(c)`
/// only `t < c` is searched.
pub fn sup_cdf_discrepancy(law: &[(f64, f64)], below: Option<f64>) -> f64 {
    let mut cum = 0.0;
    let mut sup: f64 = 0.0;
    for &(v, p) in law {
        if below.is_some_and(|c| v >= c) {
            break;
        }
        let f = limit_cdf(v);
        sup = sup.max((cum - f).abs());
        cum += p;
        sup = sup.max((cum - f).abs());
    }
    if let Some(c) = below {
        sup = sup.max((cum - limit_cdf(c)).abs());
    }
    sup
}

/// Equal-width bins of `T/(n-1)` over `[0, 1]`; a value of exactly `1`
/// lands in the last bin.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub n: usize,
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub samples: u64,
    pub seed: u64,
}

impl Histogram {
    /// CSV with columns `bin_left,bin_right,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", self.edges[i], self.edges[i + 1], c);
        }
        out
    }
}

/// Comparison of the sampled law of `T/(n-1)` with its limit.
#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    /// `|mean - 1/3|` in standard errors.
    pub mean_z: f64,
    /// `|variance - 1/45| / (1/45)`.
    pub variance_rel_error: f64,
    /// Sup CDF discrepancy on `[0, 1/2)`.
    pub sup_cdf_half: f64,
    /// Sup CDF discrepancy over all `t`.
    pub sup_cdf_all: f64,
    /// The same two discrepancies for the exact stationary law at this
    /// `n`, when `n ≤ EXACT_LAW_MAX_N`. They show how much of the sampled
    /// discrepancy is finite-`n` bias rather than noise.
    pub exact_sup_cdf_half: Option<f64>,
    pub exact_sup_cdf_all: Option<f64>,
}

/// Draws `samples` stationary strings of length `n`, counts alternations
/// and bins `T/(n-1)`.
pub fn alternation_histogram(n: usize, samples: u64, bins: usize, seed: u64) -> Result<(Histogram, FitReport), StatsError> {
    if n < 2 {
        return Err(StatsError::TooShort(n));
    }
    if bins == 0 || samples == 0 {
        return Err(StatsError::Range { what: "histogram", detail: format!("bins = {bins}, samples = {samples}") });
    }
    let streams = samples.div_ceil(DRAWS_PER_STREAM);
    let by_t: Vec<u64> = (0..streams)
        .into_par_iter()
        .map(|id| {
            let mut rng = RngStream::new(seed, id);
            let draws = DRAWS_PER_STREAM.min(samples - id * DRAWS_PER_STREAM);
            let mut counts = vec![0u64; n];
            for _ in 0..draws {
                let x = sample_stationary(n, 2, &mut rng);
                counts[alternations(&x).expect("binary draw")] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let scale = (n - 1) as f64;
    let mut counts = vec![0u64; bins];
    for (t, &c) in by_t.iter().enumerate() {
        let v = t as f64 / scale;
        let b = ((v * bins as f64) as usize).min(bins - 1);
        counts[b] += c;
    }
    let edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();

    let total = samples as f64;
    let mean = by_t.iter().enumerate().map(|(t, &c)| c as f64 * t as f64 / scale).sum::<f64>() / total;
    let ss = by_t.iter().enumerate().map(|(t, &c)| c as f64 * (t as f64 / scale - mean).powi(2)).sum::<f64>();
    let variance = if samples > 1 { ss / (total - 1.0) } else { 0.0 };
    let std_error = (variance / total).sqrt();
    let law: Vec<(f64, f64)> = by_t.iter().enumerate().map(|(t, &c)| (t as f64 / scale, c as f64 / total)).collect();

    let (exact_half, exact_all) = if n <= EXACT_LAW_MAX_N {
        let exact: Vec<(f64, f64)> = alternation_distribution(n)?
            .iter()
            .enumerate()
            .map(|(t, p)| (t as f64 / scale, Scalar::to_f64(p)))
            .collect();
        (Some(sup_cdf_discrepancy(&exact, Some(0.5))), Some(sup_cdf_discrepancy(&exact, None)))
    } else {
        (None, None)
    };

    let report = FitReport {
        n,
        samples,
        seed,
        mean,
        variance,
        std_error,
        mean_z: if std_error > 0.0 { (mean - 1.0 / 3.0).abs() / std_error } else { f64::INFINITY },
        variance_rel_error: (variance * 45.0 - 1.0).abs(),
        sup_cdf_half: sup_cdf_discrepancy(&law, Some(0.5)),
        sup_cdf_all: sup_cdf_discrepancy(&law, None),
        exact_sup_cdf_half: exact_half,
        exact_sup_cdf_all: exact_all,
    };
    Ok((Histogram { n, edges, counts, samples, seed }, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_cdf_shape() {
        assert_eq!(limit_cdf(-1.0), 0.0);
        assert_eq!(limit_cdf(0.5), 1.0);
        assert!((limit_cdf(0.375) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn discrepancy_of_a_point_mass() {
        let law = [(0.25, 1.0)];
        let f = limit_cdf(0.25);
        assert!((sup_cdf_discrepancy(&law, None) - f.max(1.0 - f)).abs() < 1e-12);
        assert!((sup_cdf_discrepancy(&law, Some(0.2)) - limit_cdf(0.2)).abs() < 1e-12);
    }

    #[test]
    fn counts_add_up_and_replay() {
        let (h, r) = alternation_histogram(30, 10_000, DEFAULT_BINS, 7).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), 10_000);
        assert_eq!(h.edges.len(), DEFAULT_BINS + 1);
        let (h2, r2) = alternation_histogram(30, 10_000, DEFAULT_BINS, 7).unwrap();
        assert_eq!(h, h2);
        assert_eq!(r, r2);
        assert!(r.mean_z < 5.0, "{r:?}");
        assert!(h.to_csv().starts_with("bin_left,bin_right,count\n0,0.02,"));
    }

    #[test]
    fn bad_arguments() {
        assert_eq!(alternation_histogram(1, 10, 5, 0).unwrap_err(), StatsError::TooShort(1));
        assert!(alternation_histogram(5, 10, 0, 0).is_err());
    }
}
