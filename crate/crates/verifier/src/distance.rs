//! Checks on chi-square and total variation distances: the averaged
//! formula, the constant-start envelope, the one-ones window, and the
//! averaged distance on both sides of the cutoff.

use chain_core::{build_kernel, State};
use exact_core::{Scalar, Sign};
use mixing::{
    bound_envelopes, chi2_avg_by_orbits, chi2_avg_definition, chi2_avg_exact, chi2_avg_log, chi2_exact, chi2_from_one_one,
    leading_constant, one_one_envelope, steps_at, BoundSource, CutoffVariant, ONE_ONE_LIMIT,
};

use crate::error::{precondition, VerifierError};
use crate::result::{CheckResult, Checker};

pub const AVG_MAX_N: usize = 6;
pub const AVG_MAX_STEPS: u64 = 4;
pub const ENVELOPE_MAX_N: usize = 10;
pub const ENVELOPE_MAX_STEPS: u64 = 6;
pub const ONE_ONE_MAX_N: usize = 10;
/// Up to this `n` the one-ones assembly is compared with matrix powers.
pub const ONE_ONE_ASSEMBLY_MAX_N: usize = 6;
pub const ONE_ONE_STEPS: std::ops::RangeInclusive<u64> = 3..=6;
pub const TREND_N: usize = 200;
pub const TREND_TOLERANCE: f64 = 0.1;
pub const CUTOFF_NS: [u64; 3] = [10_000, 100_000, 1_000_000];
/// Required `|ln χ²_avg|` on either side of the cutoff.
pub const CUTOFF_LOG_MARGIN: f64 = 10.0;

/// `Σ_k C(n,2k) β_k^{2ℓ}` against the π-average of rows of `K^ℓ`, and
/// against the same average taken over orbits.
pub fn verify_avg_formula(n: usize) -> Result<CheckResult, VerifierError> {
    if n == 0 || n > AVG_MAX_N {
        return Err(precondition("avg-formula", format!("needs 1 <= n <= {AVG_MAX_N}, got {n}")));
    }
    let kernel = build_kernel(n, 2)?;
    let mut c = Checker::new("avg-formula").param("n", n);
    let mut values = Vec::new();
    for l in 1..=AVG_MAX_STEPS {
        let formula = chi2_avg_exact(n, l)?;
        let def = chi2_avg_definition(&kernel, l)?;
        let orbits = chi2_avg_by_orbits(&kernel, l)?;
        c.check(formula == def, || format!("l={l}: formula {formula}, definition {def}"));
        c.check(formula == orbits, || format!("l={l}: formula {formula}, orbit average {orbits}"));
        values.push(formula.to_string());
    }
    Ok(c.finish(format!("l=1..{AVG_MAX_STEPS}: {}", values.join(", "))))
}

/// `(1/4)^{ℓ+1} ≤ TV_0(ℓ) ≤ 4 (1/4)^ℓ` from the all-zeros state, with
/// every other applicable bound on TV and chi-square checked alongside.
pub fn verify_constant_start(n: usize) -> Result<CheckResult, VerifierError> {
    if !(2..=ENVELOPE_MAX_N).contains(&n) {
        return Err(precondition("constant-start", format!("needs 2 <= n <= {ENVELOPE_MAX_N}, got {n}")));
    }
    let kernel = build_kernel(n, 2)?;
    let x = State::zeros(n, 2);
    let mut c = Checker::new("constant-start").param("n", n);
    let mut tvs = Vec::new();
    for l in 1..=ENVELOPE_MAX_STEPS {
        let r = bound_envelopes(&kernel, &x, l)?;
        let sources: Vec<BoundSource> = r.tv.lower.iter().chain(&r.tv.upper).map(|b| b.source).collect();
        c.check(
            sources.contains(&BoundSource::ConstantStartLower) && sources.contains(&BoundSource::ConstantStartUpper),
            || format!("l={l}: constant-start bounds not attached"),
        );
        let mut bad = r.tv.violations();
        bad.extend(r.chi2.violations());
        c.check(bad.is_empty(), || {
            let names: Vec<String> = bad.iter().map(ToString::to_string).collect();
            format!("l={l}: TV {} violates {}", r.tv.exact, names.join(", "))
        });
        tvs.push(format!("{:.3e}", Scalar::to_f64(&r.tv.exact)));
    }
    Ok(c.finish(format!("TV l=1..{ENVELOPE_MAX_STEPS}: {}", tvs.join(" "))))
}

/// `5 (1/4)^{2s} ≤ χ²_{e_n}(s) ≤ 270 (1/4)^{2s}` for `s = 3..6`, and for
/// small `n` the spectral assembly equals the value from kernel powers.
pub fn verify_one_one(n: usize) -> Result<CheckResult, VerifierError> {
    if !(3..=ONE_ONE_MAX_N).contains(&n) {
        return Err(precondition("one-one", format!("needs 3 <= n <= {ONE_ONE_MAX_N}, got {n}")));
    }
    let mut c = Checker::new("one-one").param("n", n);
    let mut scaled = Vec::new();
    for s in ONE_ONE_STEPS {
        let e = one_one_envelope(n, s)?;
        c.check(e.holds(), || format!("s={s}: scaled distance {} outside [5, 270]", e.scaled()));
        scaled.push(format!("{:.3}", Scalar::to_f64(&e.scaled())));
    }
    if n <= ONE_ONE_ASSEMBLY_MAX_N {
        let kernel = build_kernel(n, 2)?;
        let x = State::unit(n, n);
        for s in 1..=*ONE_ONE_STEPS.end() {
            let (a, b) = (chi2_from_one_one(n, s)?, chi2_exact(&kernel, &x, s)?);
            c.check(a == b, || format!("s={s}: assembly {a}, kernel powers {b}"));
        }
    }
    Ok(c.finish(format!("scaled s=3..6: {}", scaled.join(" "))))
}

/// At large `n` the two `β_1` pieces of the one-ones distance, divided by
/// `(1/4)^{2s}`, add up to within 10% of 35. The full scaled distance at
/// each `s` is reported beside them.
pub fn verify_one_one_trend(n: usize) -> Result<CheckResult, VerifierError> {
    if n < 3 {
        return Err(precondition("one-one-trend", format!("needs n >= 3, got {n}")));
    }
    let mut c = Checker::new("one-one-trend").param("n", n);
    let (a, b) = leading_constant(n)?;
    let total = Scalar::to_f64(&(&a + &b));
    let limit = ONE_ONE_LIMIT as f64;
    let rel = (total - limit).abs() / limit;
    c.check(rel <= TREND_TOLERANCE, || format!("leading pieces sum to {total:.4}, {:.1}% from {limit}", 100.0 * rel));
    let full: Result<Vec<String>, VerifierError> = ONE_ONE_STEPS
        .map(|s| Ok(format!("{:.3}", Scalar::to_f64(&one_one_envelope(n, s)?.scaled()))))
        .collect();
    Ok(c.finish(format!(
        "leading pieces {:.4} + {:.4} = {total:.4}; full scaled s=3..6: {}",
        Scalar::to_f64(&a),
        Scalar::to_f64(&b),
        full?.join(" ")
    )))
}

/// `ln χ²_avg > 10` at `0.9` times the cutoff time and `< -10` at `1.1`
/// times it.
pub fn verify_cutoff(ns: &[u64]) -> Result<CheckResult, VerifierError> {
    let mut c = Checker::new("cutoff").param("ns", ns.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
    let mut parts = Vec::new();
    for &n in ns {
        let (early, late) = (steps_at(n, 0.9, CutoffVariant::Refined), steps_at(n, 1.1, CutoffVariant::Refined));
        let (hi, lo) = (chi2_avg_log(n, early)?, chi2_avg_log(n, late)?);
        c.check(hi.sign() == Sign::Positive && hi.log_magnitude() > CUTOFF_LOG_MARGIN, || {
            format!("n={n}, {early} steps: ln chi2_avg = {:.3}", hi.log_magnitude())
        });
        c.check(lo.log_magnitude() < -CUTOFF_LOG_MARGIN, || {
            format!("n={n}, {late} steps: ln chi2_avg = {:.3}", lo.log_magnitude())
        });
        parts.push(format!("n={n}: ln {:.1} at {early}, {:.1} at {late}", hi.log_magnitude(), lo.log_magnitude()));
    }
    Ok(c.finish(parts.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn avg_formula_small() {
        for n in 1..=4 {
            let r = verify_avg_formula(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert_eq!(chi2_avg_exact(2, 1).unwrap(), ratio(1, 16));
    }

    #[test]
    fn constant_start_small() {
        for n in 2..=6 {
            let r = verify_constant_start(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_constant_start(1).is_err());
    }

    #[test]
    fn one_one_small() {
        for n in 3..=6 {
            let r = verify_one_one(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn trend_at_two_hundred() {
        let r = verify_one_one_trend(TREND_N).unwrap();
        assert!(r.passed(), "{r}");
        assert!(!verify_one_one_trend(10).unwrap().passed());
    }

    #[test]
    fn cutoff_at_ten_thousand() {
        let r = verify_cutoff(&[10_000]).unwrap();
        assert!(r.passed(), "{r}");
        let early = verify_cutoff(&[20]).unwrap();
        assert!(!early.passed());
    }
}
