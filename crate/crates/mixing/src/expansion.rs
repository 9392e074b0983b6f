//! Chi-square distance through the orthogonal eigenbasis:
//! `χ²_x(s) = Σ f(x)² / ‖f‖²_π · β^{2s}`, summed over every non-constant
//! basis vector `f`.

use chain_core::{ChainError, State};
use exact_core::Rational;
use num_traits::{One, Zero};
use spectral::{Eigenvalue, SpectralBasis};

use crate::error::{range, MixingError};

pub fn chi2_spectral(basis: &SpectralBasis, x: &State, s: u64) -> Result<Rational, MixingError> {
    if s == 0 {
        return Err(range("chi2_spectral", "needs s >= 1; zero eigenvalues would enter as 0^0"));
    }
    if x.k() != 2 {
        return Err(ChainError::BinaryOnly(x.k()).into());
    }
    if x.n() != basis.n {
        return Err(ChainError::ShapeMismatch { n1: basis.n, k1: 2, n2: x.n(), k2: 2 }.into());
    }
    let at = x.index();
    let mut total = Rational::zero();
    for v in &basis.vectors {
        let Eigenvalue::Beta(level) = v.eigenvalue else { continue };
        if level == 0 {
            continue;
        }
        let fx = &v.coords[at];
        if fx.is_zero() {
            continue;
        }
        total += fx * fx / &v.norm * pow(&v.eigenvalue.value(), 2 * s);
    }
    Ok(total)
}

pub(crate) fn pow(r: &Rational, e: u64) -> Rational {
    let e = i32::try_from(e).expect("exponent fits in i32");
    if e == 0 {
        Rational::one()
    } else {
        num_traits::Pow::pow(r, e)
    }
}
