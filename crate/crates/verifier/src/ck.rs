//! Eigenvalue multiplicities of the chain on `k`-letter words.
//!
//! Exact mode pins one rational eigenvalue with the certified sandwich of
//! [`crate::multiplicity`], using lifts of eigenvectors from kernels on
//! fewer coordinates as the lower family. Survey mode diagonalizes the
//! symmetrized kernel in floating point, clusters the spectrum, and
//! confirms every cluster that looks rational with the same sandwich.

use chain_core::{build_kernel, lump_to_orbits, Kernel};
use exact_core::{binomial, rational_rank, BigInt, Rational};
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;
use spectral::multiplicity_table;

use crate::error::{precondition, VerifierError};
use crate::multiplicity::{certify_multiplicity, first_non_eigenvector, lifted_eigenvectors};
use crate::result::{CheckResult, Checker};

/// Largest state space for survey mode.
pub const SURVEY_MAX_STATES: usize = 729;
pub const CLUSTER_TOL: f64 = 1e-9;
/// Clusters closer than this multiple of the tolerance are flagged.
pub const AMBIGUITY_FACTOR: f64 = 10.0;
pub const MAX_DENOMINATOR: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum CkTarget {
    Exact(Rational),
    Survey,
}

/// Multiplicities known in closed form or reported as data points.
pub fn known_multiplicity(k: u8, n: usize, lambda: &Rational) -> Option<usize> {
    if k == 2 {
        return multiplicity_table(n)
            .into_iter()
            .find(|(ev, _)| ev.value() == *lambda)
            .map(|(_, m)| m as usize)
            .or(Some(0));
    }
    if k == 3 && *lambda == Rational::new(1.into(), 18.into()) && (4..=7).contains(&n) {
        return binomial(n as u64, 4).to_usize().map(|c| 2 * c);
    }
    None
}

pub fn verify_ck_multiplicities(k: u8, n: usize, target: &CkTarget) -> Result<CheckResult, VerifierError> {
    if n == 0 || k < 2 {
        return Err(precondition("ck-multiplicities", format!("needs n >= 1 and k >= 2, got k={k}, n={n}")));
    }
    let kernel = build_kernel(n, k)?;
    match target {
        CkTarget::Exact(lambda) => exact_mode(&kernel, lambda),
        CkTarget::Survey => survey_mode(&kernel),
    }
}

fn exact_mode(kernel: &Kernel, lambda: &Rational) -> Result<CheckResult, VerifierError> {
    let (k, n) = (kernel.k(), kernel.n());
    let mut c = Checker::new("ck-multiplicities").param("k", k).param("n", n).param("lambda", lambda.to_string());
    let family = lifted_eigenvectors(kernel, lambda)?;
    let bad = first_non_eigenvector(kernel.matrix(), &family, lambda);
    c.batch(family.len() as u64, bad.map(|i| format!("lifted vector {i} is not a {lambda}-eigenvector")));
    let proven: &[Vec<BigInt>] = if bad.is_none() { &family } else { &[] };

    let m = certify_multiplicity(kernel.matrix(), lambda, proven);
    c.check(m.certified().is_some(), || format!("multiplicity only bounded to [{}, {}]", m.lower, m.upper));
    if let Some(e) = m.exact {
        c.check(m.certified() == Some(e), || format!("Bareiss corank {e} disagrees with [{}, {}]", m.lower, m.upper));
    }
    if let Some(want) = known_multiplicity(k, n, lambda) {
        c.check(m.certified() == Some(want), || format!("multiplicity {} (bounds [{}, {}]), expected {want}", m.lower, m.lower, m.upper));
    }

    let orbit = lump_to_orbits(kernel)?;
    let lumped = orbit.matrix.rows() - rational_rank(&orbit.matrix.shift_diagonal(lambda)?);
    let full = m.certified().map_or_else(|| format!("[{}, {}]", m.lower, m.upper), |v| v.to_string());
    Ok(c.finish(format!(
        "multiplicity {full} ({} lifted vectors, {} primes), lumped chain {lumped}",
        family.len(),
        m.primes_used
    )))
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub fn best_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (p1, q1)
}

/// Eigenvalues of `√(π(x)/π(y)) K(x,y)` in increasing order.
pub fn symmetrized_spectrum(kernel: &Kernel) -> Vec<f64> {
    let size = kernel.size();
    let sizes: Vec<f64> = (0..size).map(|i| kernel.orbit_size(i) as f64).collect();
    let d = kernel.matrix().denom() as f64;
    let s = DMatrix::from_fn(size, size, |x, y| (sizes[y] / sizes[x]).sqrt() * kernel.matrix().raw(x, y) as f64 / d);
    let sym = (&s + s.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Groups of sorted values whose consecutive gaps stay within `tol`.
pub fn cluster(sorted: &[f64], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some(g) if v - g[g.len() - 1] <= tol => g.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

fn survey_mode(kernel: &Kernel) -> Result<CheckResult, VerifierError> {
    let (k, n, size) = (kernel.k(), kernel.n(), kernel.size());
    if size > SURVEY_MAX_STATES {
        return Err(precondition("ck-survey", format!("{size} states exceeds the survey cap {SURVEY_MAX_STATES}")));
    }
    let mut c = Checker::new("ck-survey").param("k", k).param("n", n);
    c.flag(format!("floating-point clustering at tolerance {CLUSTER_TOL:e}"));
    let groups = cluster(&symmetrized_spectrum(kernel), CLUSTER_TOL);
    for w in groups.windows(2) {
        let gap = w[1][0] - w[0][w[0].len() - 1];
        if gap < AMBIGUITY_FACTOR * CLUSTER_TOL {
            c.flag(format!("ambiguous clusters near {:.12} (gap {gap:.1e})", w[0][0]));
        }
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for g in groups.iter().rev() {
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        total += g.len();
        let (p, q) = best_rational(mean, MAX_DENOMINATOR);
        let close = (mean - p as f64 / q as f64).abs() <= AMBIGUITY_FACTOR * CLUSTER_TOL;
        if !close {
            parts.push(format!("{mean:.10} x{}", g.len()));
            continue;
        }
        let lam = Rational::new(p.into(), q.into());
        let family = lifted_eigenvectors(kernel, &lam)?;
        let proven = if first_non_eigenvector(kernel.matrix(), &family, &lam).is_none() { family } else { Vec::new() };
        let m = certify_multiplicity(kernel.matrix(), &lam, &proven);
        match m.certified() {
            Some(exact) => {
                c.check(exact == g.len(), || format!("cluster at {lam} has {} values, exact multiplicity {exact}", g.len()));
                parts.push(format!("{lam} x{} exact", g.len()));
            }
            None => {
                c.flag(format!("{lam}: multiplicity bounded to [{}, {}] only", m.lower, m.upper));
                parts.push(format!("{lam}? x{}", g.len()));
            }
        }
    }
    c.check(total == size, || format!("{total} eigenvalues for {size} states"));
    Ok(c.finish(format!("{} clusters: {}", groups.len(), parts.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    #[test]
    fn binary_quarter_at_five() {
        let r = verify_ck_multiplicities(2, 5, &CkTarget::Exact(ratio(1, 4))).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.summary.starts_with("multiplicity 10 "), "{}", r.summary);
    }

    #[test]
    fn ternary_eighteenth() {
        let r = verify_ck_multiplicities(3, 4, &CkTarget::Exact(ratio(1, 18))).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.summary.starts_with("multiplicity 2 "), "{}", r.summary);
        let r = verify_ck_multiplicities(3, 5, &CkTarget::Exact(ratio(1, 18))).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.summary.starts_with("multiplicity 10 "), "{}", r.summary);
    }

    #[test]
    fn ternary_eighteenth_at_three_is_data() {
        assert_eq!(known_multiplicity(3, 3, &ratio(1, 18)), None);
        let r = verify_ck_multiplicities(3, 3, &CkTarget::Exact(ratio(1, 18))).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(best_rational(1.0 / 18.0, MAX_DENOMINATOR), (1, 18));
        assert_eq!(best_rational(9.0 / 64.0 + 1e-13, MAX_DENOMINATOR), (9, 64));
        assert_eq!(best_rational(0.0, MAX_DENOMINATOR), (0, 1));
        let (p, q) = best_rational(std::f64::consts::PI, 1000);
        assert_eq!((p, q), (355, 113));
    }

    #[test]
    fn clustering() {
        let g = cluster(&[0.0, 1e-12, 0.25, 0.25 + 5e-10, 1.0], CLUSTER_TOL);
        assert_eq!(g.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2, 1]);
    }

    #[test]
    fn binary_survey_is_all_rational() {
        let r = verify_ck_multiplicities(2, 4, &CkTarget::Survey).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary, "4 clusters: 1 x1 exact, 1/4 x6 exact, 9/64 x1 exact, 0 x8 exact");
    }

    #[test]
    fn ternary_survey_small() {
        let r = verify_ck_multiplicities(3, 3, &CkTarget::Survey).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.flags.iter().any(|f| f.contains("tolerance")));
    }
}
