//! The binary spectrum: subset eigenvectors and certified multiplicities.

use chain_core::build_kernel;
use exact_core::{rank_mod_p, BigInt, CERT_PRIMES};
use rayon::prelude::*;
use spectral::{f_subset_vector, multiplicity_table, subset_eigenvalue};

use crate::error::{precondition, VerifierError};
use crate::multiplicity::{certify_multiplicity, is_integer_eigenvector};
use crate::result::{CheckResult, Checker};

/// `{1,3}` for the mask `0b101`.
pub fn mask_string(mask: u64) -> String {
    let coords: Vec<String> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", coords.join(","))
}

fn subset_family(n: usize, keep: impl Fn(u64) -> bool) -> Vec<Vec<BigInt>> {
    (0..1u64 << n).filter(|&s| keep(s)).map(|s| f_subset_vector(n, s).into_iter().map(BigInt::from).collect()).collect()
}

/// Modular rank of a family, trying primes until the family is seen to be
/// independent. Since a residue rank never exceeds the true rank, a full
/// residue rank certifies independence.
fn family_rank(family: &[Vec<BigInt>], cols: usize) -> usize {
    let mut best = 0;
    for &p in &CERT_PRIMES {
        let data: Vec<i128> = family
            .iter()
            .flat_map(|r| r.iter().map(|x| i128::try_from(x % BigInt::from(p)).expect("residue fits")))
            .collect();
        best = best.max(rank_mod_p(&data, family.len(), cols, p));
        if best == family.len() {
            break;
        }
    }
    best
}

/// Every subset vector is an eigenvector with the predicted eigenvalue, the
/// even and the odd families are each independent of size `2^{n-1}`, and
/// each eigenvalue's multiplicity is pinned exactly.
pub fn verify_eigenstructure(n: usize) -> Result<CheckResult, VerifierError> {
    if n == 0 {
        return Err(precondition("eigenstructure", "needs n >= 1"));
    }
    let kernel = build_kernel(n, 2)?;
    let a = kernel.matrix();
    let mut c = Checker::new("eigenstructure").param("n", n);

    let masks: Vec<u64> = (0..1u64 << n).collect();
    let bad = masks.par_iter().find_map_first(|&s| {
        let u: Vec<BigInt> = f_subset_vector(n, s).into_iter().map(BigInt::from).collect();
        let lam = subset_eigenvalue(s).value();
        (!is_integer_eigenvector(a, &u, &lam)).then(|| format!("K f_S differs from {lam} f_S for S = {}", mask_string(s)))
    });
    c.batch(masks.len() as u64, bad);

    let half = 1usize << (n - 1);
    for (parity, label) in [(0u32, "even"), (1, "odd")] {
        let fam = subset_family(n, |s| s.count_ones() % 2 == parity);
        let r = family_rank(&fam, 1 << n);
        c.check(r == half, || format!("{label} subset family has rank {r}, expected {half}"));
    }

    let mut parts = Vec::new();
    let mut total = 0u64;
    for (ev, expected) in multiplicity_table(n) {
        let lam = ev.value();
        let fam = subset_family(n, |s| subset_eigenvalue(s) == ev);
        let m = certify_multiplicity(a, &lam, &fam);
        c.check(m.certified() == Some(expected as usize), || {
            format!("eigenvalue {lam}: multiplicity in [{}, {}], expected {expected}", m.lower, m.upper)
        });
        if let Some(e) = m.exact {
            c.check(e == expected as usize, || format!("eigenvalue {lam}: Bareiss corank {e}, expected {expected}"));
        }
        total += expected;
        parts.push(format!("{lam}:{}", m.lower));
    }
    c.check(total == 1 << n, || format!("multiplicities add to {total}, not 2^{n}"));
    Ok(c.finish(format!("multiplicities {}", parts.join(" "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_coordinates() {
        let r = verify_eigenstructure(4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary, "multiplicities 1:1 1/4:6 9/64:1 0:8");
    }

    #[test]
    fn one_coordinate() {
        let r = verify_eigenstructure(1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary, "multiplicities 1:1 0:1");
        assert!(verify_eigenstructure(0).is_err());
    }

    #[test]
    fn mask_strings() {
        assert_eq!(mask_string(0b101), "{1,3}");
        assert_eq!(mask_string(0), "{}");
    }
}
