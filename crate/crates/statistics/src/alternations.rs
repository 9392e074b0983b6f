//! The alternation count `T(x)` and its moments.

use chain_core::State;
use exact_core::{binomial, rat_int, BigInt, Rational};
use num_traits::{One, Zero};

use crate::error::{binary_only, StatsError};

/// `#{i : x_i ≠ x_{i+1}}`.
pub fn alternations(x: &State) -> Result<usize, StatsError> {
    binary_only(x)?;
    Ok(x.digits().windows(2).filter(|w| w[0] != w[1]).count())
}

/// `f_{a,b}(x)` for 0-based coordinates.
pub(crate) fn f2(d: &[u8], a: usize, b: usize) -> i64 {
    match d[a] + d[b] {
        1 => -2,
        _ => 1,
    }
}

fn f4(d: &[u8], s: [usize; 4]) -> i64 {
    const ROW: [i64; 5] = [1, -4, 6, -4, 1];
    ROW[s.iter().map(|&i| d[i] as usize).sum::<usize>()]
}

fn quarter_pow(l: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (2 * l))
}

/// `E[T(X_ℓ) | X_0 = x] = (n-1)/3 - 4^{-ℓ} ((n-1)/3 - T(x))`.
pub fn expected_alternations_after(x: &State, l: u64) -> Result<Rational, StatsError> {
    let t = alternations(x)?;
    if x.n() < 2 {
        return Ok(Rational::zero());
    }
    let mean = Rational::new(BigInt::from(x.n() - 1), BigInt::from(3));
    Ok(&mean - quarter_pow(l) * (&mean - rat_int(t as u64)))
}

/// `Var(T(X_ℓ) | X_0 = x)`, from the expansions of `f_{ab} f_{cd}`,
/// `f_{ab} f_{ac}` and `f_{ab}²` into eigenvectors.
pub fn alternation_variance_after(x: &State, l: u64) -> Result<Rational, StatsError> {
    binary_only(x)?;
    let n = x.n();
    if n < 2 {
        return Ok(Rational::zero());
    }
    let d = x.digits();
    let q = quarter_pow(l);
    let r = Rational::new(BigInt::from(9u32).pow(l as u32), BigInt::from(64u32).pow(l as u32));
    let fr = |v: i64| rat_int(v);
    let half = Rational::new(1.into(), 2.into());
    let mut total = Rational::zero();
    for i in 0..n - 1 {
        let fi = f2(d, i, i + 1);
        for j in 0..n - 1 {
            let fj = f2(d, j, j + 1);
            let gap = i.abs_diff(j);
            let product = if gap == 0 {
                -&q * fr(fi) + fr(2)
            } else if gap == 1 {
                let (lo, hi) = (i.min(j), i.max(j));
                let (b, c) = (lo, hi + 1);
                Rational::new(3.into(), 2.into()) * &q * fr(f2(d, b, c)) - &half * &q * fr(fi + fj) + &half
            } else {
                let (a, b, c, e) = (i, i + 1, j, j + 1);
                let cross = f2(d, a, c) + f2(d, a, e) + f2(d, b, c) + f2(d, b, e);
                Rational::new(18.into(), 35.into()) * &r * fr(f4(d, [a, b, c, e]))
                    - Rational::new(2.into(), 7.into()) * &q * fr(fi + fj)
                    + Rational::new(3.into(), 14.into()) * &q * fr(cross)
                    + Rational::new(1.into(), 5.into())
            };
            total += product - &q * &q * fr(fi * fj);
        }
    }
    Ok(total / fr(9))
}

fn check_length(n: usize) -> Result<(), StatsError> {
    if n < 2 {
        return Err(StatsError::TooShort(n));
    }
    Ok(())
}

/// `(n-1)/3`.
pub fn stationary_alternation_mean(n: usize) -> Result<Rational, StatsError> {
    check_length(n)?;
    Ok(Rational::new(BigInt::from(n - 1), BigInt::from(3)))
}

/// `(n² + 10n - 14) / 45`.
pub fn stationary_alternation_variance(n: usize) -> Result<Rational, StatsError> {
    check_length(n)?;
    let n = BigInt::from(n);
    Ok(Rational::new(&n * &n + BigInt::from(10) * &n - BigInt::from(14), BigInt::from(45)))
}

/// Compositions of `m` into `p` positive parts.
fn compositions(m: usize, p: usize) -> BigInt {
    match (m, p) {
        (0, 0) => BigInt::one(),
        (_, 0) => BigInt::zero(),
        _ if m < p => BigInt::zero(),
        _ => binomial((m - 1) as u64, (p - 1) as i64),
    }
}

/// `P_π(T = t)` for `t = 0..n-1`, exactly. A string with `a` ones and
/// `t + 1` runs is counted by splitting each value into its runs.
pub fn alternation_distribution(n: usize) -> Result<Vec<Rational>, StatsError> {
    check_length(n)?;
    let mut out = vec![Rational::zero(); n];
    for a in 0..=n {
        let orbit = binomial(n as u64, a as i64);
        for (t, slot) in out.iter_mut().enumerate() {
            let runs = t + 1;
            let (major, minor) = (runs.div_ceil(2), runs / 2);
            let count = compositions(n - a, major) * compositions(a, minor) + compositions(a, major) * compositions(n - a, minor);
            if !count.is_zero() {
                *slot += Rational::new(count, &orbit * BigInt::from(n + 1));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;
    use num_traits::Signed;

    fn st(s: &str) -> State {
        State::parse(s, 2).unwrap()
    }

    #[test]
    fn counting_examples() {
        assert_eq!(alternations(&st("011011")).unwrap(), 3);
        assert_eq!(alternations(&st("000")).unwrap(), 0);
        assert_eq!(alternations(&st("0101")).unwrap(), 3);
        assert!(alternations(&State::parse("012", 3).unwrap()).is_err());
    }

    #[test]
    fn expectation_examples() {
        let x = st("01");
        assert_eq!(expected_alternations_after(&x, 0).unwrap(), ratio(1, 1));
        assert_eq!(expected_alternations_after(&x, 1).unwrap(), ratio(1, 2));
        let far = expected_alternations_after(&st("0101010"), 40).unwrap();
        assert!((far - ratio(2, 1)).abs() < ratio(1, 1_000_000_000));
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(stationary_alternation_variance(2).unwrap(), ratio(2, 9));
        assert_eq!(stationary_alternation_variance(3).unwrap(), ratio(5, 9));
        assert_eq!(stationary_alternation_variance(1), Err(StatsError::TooShort(1)));
        let n = 10_000usize;
        let normalized = stationary_alternation_variance(n).unwrap() / rat_int(((n - 1) * (n - 1)) as u64);
        let rel = (normalized * rat_int(45) - Rational::one()).abs();
        assert!(rel < ratio(1, 100));
    }

    #[test]
    fn distribution_has_the_stated_moments() {
        for n in 2..=40 {
            let p = alternation_distribution(n).unwrap();
            assert_eq!(p.iter().sum::<Rational>(), Rational::one());
            let mean: Rational = p.iter().enumerate().map(|(t, q)| q * rat_int(t as u64)).sum();
            let second: Rational = p.iter().enumerate().map(|(t, q)| q * rat_int((t * t) as u64)).sum();
            assert_eq!(mean, stationary_alternation_mean(n).unwrap());
            assert_eq!(&second - &mean * &mean, stationary_alternation_variance(n).unwrap());
        }
    }

    #[test]
    fn variance_after_zero_steps_vanishes_and_tends_to_stationary() {
        let x = st("0010111");
        assert_eq!(alternation_variance_after(&x, 0).unwrap(), Rational::zero());
        let far = alternation_variance_after(&x, 60).unwrap();
        assert!((far - stationary_alternation_variance(7).unwrap()).abs() < ratio(1, 1_000_000_000));
    }
}
