//! Discrete Chebyshev and Hahn polynomials, and the level scalars that
//! link the orthogonal basis to them.

use exact_core::{binomial, factorial, rat_int, rising_factorial, BigInt, Rational};
use num_traits::{One, Zero};

use crate::error::{range, SpectralError};

/// Degree `m` discrete Chebyshev polynomial on `{0..n}` at `i`, by the
/// three-term recurrence `T^0 = 1`, `T^1(x) = (n - 2x)/n`,
/// `(j+1)(n-j) T^{j+1} = (2j+1)(n-2x) T^j - j(j+n+1) T^{j-1}`.
pub fn chebyshev_eval(n: usize, m: usize, i: usize) -> Result<Rational, SpectralError> {
    if m > n || i > n {
        return Err(range("chebyshev", format!("need m, i <= n; got n={n}, m={m}, i={i}")));
    }
    let (n, x) = (n as i64, i as i64);
    let mut prev = Rational::one();
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = Rational::new((n - 2 * x).into(), n.into());
    for j in 1..m as i64 {
        let next = (rat_int(2 * j + 1) * rat_int(n - 2 * x) * &cur - rat_int(j * (j + n + 1)) * &prev)
            / rat_int((j + 1) * (n - j));
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `(T^m(0), ..., T^m(n))`.
pub fn chebyshev_vector(n: usize, m: usize) -> Result<Vec<Rational>, SpectralError> {
    (0..=n).map(|i| chebyshev_eval(n, m, i)).collect()
}

fn check_hahn(n: usize, alpha: &Rational, beta: &Rational, l: usize, i: usize) -> Result<(), SpectralError> {
    let minus_one = -Rational::one();
    if *alpha <= minus_one || *beta <= minus_one {
        return Err(range("hahn", "parameters must exceed -1"));
    }
    if l > n || i > n {
        return Err(range("hahn", format!("need l, i <= n; got n={n}, l={l}, i={i}")));
    }
    Ok(())
}

/// `Q^ℓ_{n;α,β}(i) = Σ_j (-ℓ)_j (ℓ+α+β+1)_j (-i)_j / ((α+1)_j (-n)_j j!)`,
/// normalized so that `Q(0) = 1`.
pub fn hahn_eval(n: usize, alpha: &Rational, beta: &Rational, l: usize, i: usize) -> Result<Rational, SpectralError> {
    check_hahn(n, alpha, beta, l, i)?;
    let neg = |v: usize| Rational::from_integer(-BigInt::from(v));
    let shift = rat_int(l as i64 + 1) + alpha + beta;
    let a1 = alpha + Rational::one();
    let mut sum = Rational::zero();
    for j in 0..=l.min(i) as u64 {
        let num = rising_factorial(&neg(l), j) * rising_factorial(&shift, j) * rising_factorial(&neg(i), j);
        let den = rising_factorial(&a1, j) * rising_factorial(&neg(n), j) * Rational::from_integer(factorial(j));
        sum += num / den;
    }
    Ok(sum)
}

/// Orthogonality weight `C(α+i, i) C(n+β-i, n-i)`, with the binomials read
/// as `(α+1)_i / i!` and `(β+1)_{n-i} / (n-i)!` for rational parameters.
pub fn hahn_weight(n: usize, alpha: &Rational, beta: &Rational, i: usize) -> Rational {
    let one = Rational::one();
    rising_factorial(&(alpha + &one), i as u64) / Rational::from_integer(factorial(i as u64))
        * rising_factorial(&(beta + &one), (n - i) as u64)
        / Rational::from_integer(factorial((n - i) as u64))
}

/// Right side of the orthogonality relation,
/// `(-1)^ℓ ℓ! (β+1)_ℓ (ℓ+α+β+1)_{n+1} / (n! (2ℓ+α+β+1) (-n)_ℓ (α+1)_ℓ)`.
pub fn hahn_norm(n: usize, alpha: &Rational, beta: &Rational, l: usize) -> Result<Rational, SpectralError> {
    check_hahn(n, alpha, beta, l, 0)?;
    let one = Rational::one();
    let sign = if l % 2 == 0 { one.clone() } else { -one.clone() };
    let num = sign
        * Rational::from_integer(factorial(l as u64))
        * rising_factorial(&(beta + &one), l as u64)
        * rising_factorial(&(rat_int(l as i64 + 1) + alpha + beta), n as u64 + 1);
    let den = Rational::from_integer(factorial(n as u64))
        * (rat_int(2 * l as i64 + 1) + alpha + beta)
        * rising_factorial(&Rational::from_integer(-BigInt::from(n)), l as u64)
        * rising_factorial(&(alpha + &one), l as u64);
    Ok(num / den)
}

/// `T^{(ℓ)}_{m,n}(i) = Σ_j (-1)^{m+j} C(2m+ℓ, m+j) C(i, j) C(n-2m-i, ℓ-j)`.
pub fn t_scalar(m: usize, n: usize, l: usize, i: usize) -> Result<BigInt, SpectralError> {
    if 2 * m > n || l > n - 2 * m || i > n - 2 * m {
        return Err(range("t_scalar", format!("m={m}, n={n}, l={l}, i={i}")));
    }
    let rest = (n - 2 * m - i) as u64;
    let mut sum = BigInt::zero();
    for j in 0..=l.min(i) {
        let term = binomial((2 * m + l) as u64, (m + j) as i64)
            * binomial(i as u64, j as i64)
            * binomial(rest, (l - j) as i64);
        if (m + j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}
