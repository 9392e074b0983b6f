//! Numeric scans of the averaged chi-square distance around its cutoff.

use std::fmt::Write as _;

use exact_core::LogReal;
use rayon::prelude::*;

use crate::avg::chi2_avg_log;
use crate::curve::sign_number;
use crate::error::{range, MixingError};

/// Denominator of the cutoff time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutoffVariant {
    /// `(log 2 / 2) n / log((π/2) n)`.
    #[default]
    Refined,
    /// `(log 2 / 2) n / log n`.
    PlainLog,
}

pub fn cutoff_time(n: u64, variant: CutoffVariant) -> f64 {
    let n = n as f64;
    let denom = match variant {
        CutoffVariant::Refined => (std::f64::consts::FRAC_PI_2 * n).ln(),
        CutoffVariant::PlainLog => n.ln(),
    };
    std::f64::consts::LN_2 / 2.0 * n / denom
}

/// `⌈factor · cutoff_time(n)⌉`, at least one step.
pub fn steps_at(n: u64, factor: f64, variant: CutoffVariant) -> u64 {
    ((factor * cutoff_time(n, variant)).ceil() as u64).max(1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub n: u64,
    pub factor: f64,
    pub steps: u64,
    pub value: LogReal,
}

/// `χ²_avg` at every `(n, factor)` pair; rows come out grouped by `n` in
/// input order, factors in input order within each group.
pub fn cutoff_scan(ns: &[u64], factors: &[f64], variant: CutoffVariant) -> Result<Vec<ScanRow>, MixingError> {
    if let Some(f) = factors.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(range("cutoff_scan", format!("factor {f} must be positive and finite")));
    }
    if ns.iter().any(|&n| n < 2) {
        return Err(range("cutoff_scan", "every n must be at least 2"));
    }
    let groups = ns
        .par_iter()
        .map(|&n| {
            factors
                .iter()
                .map(|&factor| {
                    let steps = steps_at(n, factor, variant);
                    Ok(ScanRow { n, factor, steps, value: chi2_avg_log(n, steps)? })
                })
                .collect::<Result<Vec<_>, MixingError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(groups.into_iter().flatten().collect())
}

/// CSV with columns `n,factor,log_value,sign`.
pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("n,factor,log_value,sign\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.n, r.factor, r.value.log_magnitude(), sign_number(r.value.sign()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_times() {
        let t = cutoff_time(1000, CutoffVariant::Refined);
        assert!((t - 0.5 * std::f64::consts::LN_2 * 1000.0 / (1000.0 * std::f64::consts::FRAC_PI_2).ln()).abs() < 1e-12);
        assert!(cutoff_time(1000, CutoffVariant::PlainLog) > t);
    }

    #[test]
    fn both_sides_of_the_cutoff_at_ten_thousand() {
        let rows = cutoff_scan(&[10_000], &[0.9, 1.0, 1.1], CutoffVariant::Refined).unwrap();
        assert!(rows[0].value.log_magnitude() > 0.0);
        assert!(rows[2].value.log_magnitude() < 0.0);
        assert!(rows.windows(2).all(|w| w[1].value <= w[0].value));
        assert!(scan_to_csv(&rows).starts_with("n,factor,log_value,sign\n10000,0.9,"));
    }

    #[test]
    fn bad_inputs() {
        assert!(cutoff_scan(&[100], &[0.0], CutoffVariant::Refined).is_err());
        assert!(cutoff_scan(&[1], &[1.0], CutoffVariant::PlainLog).is_err());
    }
}
