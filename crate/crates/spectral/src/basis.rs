//! The orthogonal eigenbasis `f_Q^{m,ℓ}`.
//!
//! For the column reading tableau `T` of shape `(n-m, m)`:
//!
//! ```text
//! g_T^{m,i} = (v01 - v10)^{⊗m} ⊗ Σ_{|S| = i} v_S        (S within the last n - 2m coordinates)
//! f_T^{m,ℓ} = Σ_i T^{(ℓ)}_{m,n}(i) g_T^{m,i}
//! ```
//!
//! and a general `Q` is reached with the word `τ_Q = τ^{(1)} ... τ^{(m)}`,
//! `τ^{(r)} = τ_{a_r - 1} ... τ_{2r}`, so `τ_{2m}` acts first.

use chain_core::{ChainError, Kernel};
use exact_core::{binomial, factorial, rat_int, BigInt, Rational};
use num_traits::Zero;
use rayon::prelude::*;

use crate::eigen::{is_eigenvector, Eigenvalue};
use crate::error::{range, SpectralError};
use crate::operators::tau_apply;
use crate::poly::t_scalar;
use crate::tableau::{enumerate_tableaux, gamma_q, Tableau};

/// One basis vector with its labels, eigenvalue and squared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoVector {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub tableau: Tableau,
    pub coords: Vec<Rational>,
    pub eigenvalue: Eigenvalue,
    pub norm: Rational,
}

fn check_levels(n: usize, m: usize, top: usize, what: &'static str) -> Result<(), SpectralError> {
    if n > 24 {
        return Err(range(what, format!("dense vectors need n <= 24, got {n}")));
    }
    check_range(n, m, top, what)
}

fn check_range(n: usize, m: usize, top: usize, what: &'static str) -> Result<(), SpectralError> {
    if 2 * m > n || top > n - 2 * m {
        return Err(range(what, format!("n={n}, m={m}, level={top}")));
    }
    Ok(())
}

/// `g_T^{m,i}` for the column reading tableau.
pub fn g_column_reading(n: usize, m: usize, i: usize) -> Result<Vec<Rational>, SpectralError> {
    check_levels(n, m, i, "g_column_reading")?;
    let tail_mask: usize = ((1usize << n) - 1) & !((1usize << (2 * m)) - 1);
    Ok((0..1usize << n)
        .map(|x| {
            if (x & tail_mask).count_ones() as usize != i {
                return Rational::zero();
            }
            let mut sign = 1i64;
            for r in 0..m {
                // Coordinates 2r+1 and 2r+2 hold bits 2r and 2r+1.
                match (x >> (2 * r) & 1, x >> (2 * r + 1) & 1) {
                    (0, 1) => {}
                    (1, 0) => sign = -sign,
                    _ => return Rational::zero(),
                }
            }
            rat_int(sign)
        })
        .collect())
}

/// `f_T^{m,ℓ} = Σ_i T^{(ℓ)}_{m,n}(i) g_T^{m,i}`.
pub fn f_column_reading(n: usize, m: usize, l: usize) -> Result<Vec<Rational>, SpectralError> {
    check_levels(n, m, l, "f_column_reading")?;
    let mut out = vec![Rational::zero(); 1 << n];
    for i in 0..=n - 2 * m {
        let c = Rational::from_integer(t_scalar(m, n, l, i)?);
        if c.is_zero() {
            continue;
        }
        for (o, g) in out.iter_mut().zip(g_column_reading(n, m, i)?) {
            if !g.is_zero() {
                *o += &c * g;
            }
        }
    }
    Ok(out)
}

/// Applies `τ_Q` to a vector of the column reading eigenspace, tracking
/// the current tableau so each `τ_j` uses the right contents.
fn apply_tau_word(mut v: Vec<Rational>, q: &Tableau) -> Result<Vec<Rational>, SpectralError> {
    let m = q.m();
    let mut cur = Tableau::column_reading(q.n(), m)?;
    for r in (1..=m).rev() {
        for j in 2 * r..q.second_row()[r - 1] {
            v = tau_apply(j, &v, cur.content(j), cur.content(j + 1))?;
            cur = cur
                .swapped(j)
                .ok_or_else(|| SpectralError::Shape(format!("swapping {j} leaves {cur} non-standard")))?;
        }
    }
    debug_assert_eq!(&cur, q);
    Ok(v)
}

fn check_tableau(n: usize, m: usize, q: &Tableau) -> Result<(), SpectralError> {
    if q.n() != n || q.m() != m {
        return Err(SpectralError::Shape(format!("tableau {q} does not have shape ({}, {m})", n - m)));
    }
    Ok(())
}

/// `g_Q^{m,i} = τ_Q g_T^{m,i}`.
pub fn g_q(n: usize, m: usize, i: usize, q: &Tableau) -> Result<Vec<Rational>, SpectralError> {
    check_tableau(n, m, q)?;
    apply_tau_word(g_column_reading(n, m, i)?, q)
}

/// `f_Q^{m,ℓ} = τ_Q f_T^{m,ℓ}` with eigenvalue and closed-form norm.
pub fn build_f_q(n: usize, m: usize, l: usize, q: &Tableau) -> Result<OrthoVector, SpectralError> {
    check_tableau(n, m, q)?;
    let coords = apply_tau_word(f_column_reading(n, m, l)?, q)?;
    Ok(OrthoVector {
        n,
        m,
        l,
        tableau: q.clone(),
        coords,
        eigenvalue: Eigenvalue::for_level(m, l),
        norm: norm_f_q(n, m, l, q)?,
    })
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// Closed form `⟨f_Q^{m,ℓ}, f_Q^{m,ℓ}⟩_π =
/// γ_Q (2^m/(n+1)) (2m+ℓ)! / ((2m+2ℓ+1) (m+ℓ)!² ℓ!) · (n-2m)!/n! · (n+ℓ+1)!/(n-2m-ℓ)!`.
pub fn norm_f_q(n: usize, m: usize, l: usize, q: &Tableau) -> Result<Rational, SpectralError> {
    check_range(n, m, l, "norm_f_q")?;
    check_tableau(n, m, q)?;
    let head = gamma_q(q) * Rational::new(BigInt::from(1) << m, BigInt::from(n + 1));
    let mid = fact(2 * m + l) / (rat_int((2 * m + 2 * l + 1) as i64) * fact(m + l) * fact(m + l) * fact(l));
    let tail = fact(n - 2 * m) / fact(n) * fact(n + l + 1) / fact(n - 2 * m - l);
    Ok(head * mid * tail)
}

/// The same norm before summation:
/// `γ_Q (2^m/(n+1)) Σ_i T^{(ℓ)}_{m,n}(i)² C(n-2m, i) / C(n, m+i)`.
pub fn norm_f_q_by_sum(n: usize, m: usize, l: usize, q: &Tableau) -> Result<Rational, SpectralError> {
    check_range(n, m, l, "norm_f_q_by_sum")?;
    check_tableau(n, m, q)?;
    let mut sum = Rational::zero();
    for i in 0..=n - 2 * m {
        let t = t_scalar(m, n, l, i)?;
        sum += Rational::new(&t * &t * binomial((n - 2 * m) as u64, i as i64), binomial(n as u64, (m + i) as i64));
    }
    Ok(gamma_q(q) * Rational::new(BigInt::from(1) << m, BigInt::from(n + 1)) * sum)
}

/// `⟨u, v⟩_π = Σ_x π(x) u(x) v(x)` with `π(x) = 1 / ((n+1) C(n, |x|))`.
pub fn pi_inner(n: usize, u: &[Rational], v: &[Rational]) -> Rational {
    let weights: Vec<Rational> = (0..=n).map(|j| Rational::new(1.into(), BigInt::from(n + 1) * binomial(n as u64, j as i64))).collect();
    u.iter()
        .zip(v)
        .enumerate()
        .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
        .map(|(x, (a, b))| a * b * &weights[x.count_ones() as usize])
        .sum()
}

/// All `2^n` vectors, ordered by `m`, then `ℓ`, then tableau.
#[derive(Clone, Debug)]
pub struct SpectralBasis {
    pub n: usize,
    pub vectors: Vec<OrthoVector>,
}

/// Builds the full orthogonal basis; triples are built in parallel and
/// collected in their canonical order.
pub fn build_basis(n: usize) -> Result<SpectralBasis, SpectralError> {
    let triples: Vec<(usize, usize, Tableau)> = (0..=n / 2)
        .flat_map(|m| (0..=n - 2 * m).flat_map(move |l| enumerate_tableaux(n, m).into_iter().map(move |q| (m, l, q))))
        .collect();
    let vectors = triples
        .par_iter()
        .map(|(m, l, q)| build_f_q(n, *m, *l, q))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpectralBasis { n, vectors })
}

impl SpectralBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Checks `K f = β f` exactly for every vector.
    pub fn check_eigen(&self, kernel: &Kernel) -> Result<(), SpectralError> {
        if kernel.n() != self.n || kernel.k() != 2 {
            return Err(SpectralError::Shape("kernel does not match the basis".into()));
        }
        match self.vectors.par_iter().find_any(|v| !is_eigenvector(kernel, &v.coords, &v.eigenvalue.value())) {
            Some(v) => Err(SpectralError::Chain(ChainError::InvariantViolation(format!(
                "f_Q^{{{},{}}} for {} is not an eigenvector",
                v.m, v.l, v.tableau
            )))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn n3_examples() {
        let t = Tableau::column_reading(3, 0).unwrap();
        let f01 = build_f_q(3, 0, 1, &t).unwrap();
        // Index order here is little-endian; these states read 000,100,010,110,001,101,011,111.
        assert_eq!(f01.coords, ints(&[3, 1, 1, -1, 1, -1, -1, -3]));
        assert_eq!(f01.norm, ratio(5, 1));
        let f00 = build_f_q(3, 0, 0, &t).unwrap();
        assert_eq!(f00.coords, ints(&[1; 8]));
        assert_eq!(f00.eigenvalue, Eigenvalue::Beta(0));
        let cr = Tableau::column_reading(3, 1).unwrap();
        let f10 = build_f_q(3, 1, 0, &cr).unwrap();
        assert_eq!(f10.norm, ratio(4, 3));
        assert_eq!(norm_f_q(3, 0, 2, &t).unwrap(), ratio(9, 1));
        assert_eq!(norm_f_q(3, 1, 1, &cr).unwrap(), ratio(3, 1));
    }

    #[test]
    fn closed_form_norms_match_sums_and_direct_products() {
        for n in 1..=6 {
            let basis = build_basis(n).unwrap();
            assert_eq!(basis.len(), 1 << n);
            for v in &basis.vectors {
                assert_eq!(v.norm, pi_inner(n, &v.coords, &v.coords), "n={n} m={} l={} {}", v.m, v.l, v.tableau);
                assert_eq!(v.norm, norm_f_q_by_sum(n, v.m, v.l, &v.tableau).unwrap());
            }
        }
    }

    #[test]
    fn bad_labels_are_rejected() {
        let t = Tableau::column_reading(4, 1).unwrap();
        assert!(build_f_q(4, 1, 3, &t).is_err());
        assert!(build_f_q(5, 1, 0, &t).is_err());
        assert!(build_f_q(4, 2, 0, &t).is_err());
    }
}
