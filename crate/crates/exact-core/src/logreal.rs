//! Signed numbers stored as `(sign, ln |x|)`.
//!
//! Terms such as `C(n, 2k) β_k^{2ℓ}` at `n = 10^6` have logarithms in the
//! hundreds of thousands, so no fixed width float can hold them. Addition
//! goes through log-sum-exp with explicit sign tracking.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }
}

/// A real number `sign * exp(log_mag)`. Zero carries `log_mag = -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogReal {
    sign: Sign,
    log_mag: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { sign: Sign::Zero, log_mag: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { sign: Sign::Positive, log_mag: 0.0 };

    pub fn new(sign: Sign, log_mag: f64) -> Self {
        if sign == Sign::Zero || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { sign, log_mag }
        }
    }

    /// The positive number `exp(log_mag)`.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(Sign::Positive, log_mag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else if x > 0.0 {
            Self::new(Sign::Positive, x.ln())
        } else {
            Self::new(Sign::Negative, (-x).ln())
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        if r.is_zero() {
            return Self::ZERO;
        }
        let sign = if r.is_negative() { Sign::Negative } else { Sign::Positive };
        Self::new(sign, ln_bigint(&r.numer().abs()) - ln_bigint(r.denom()))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// Back to a double; overflows to `±inf` or underflows to `0` as usual.
    pub fn to_f64(&self) -> f64 {
        self.sign.as_f64() * self.log_mag.exp()
    }

    pub fn powi(&self, e: u64) -> Self {
        if e == 0 {
            return Self::ONE;
        }
        let sign = if self.sign == Sign::Negative && e % 2 == 0 { Sign::Positive } else { self.sign };
        Self::new(sign, self.log_mag * e as f64)
    }

    /// Sum of many terms: positives and negatives are each pooled around
    /// their largest log with a compensated sum, then the two pools meet.
    pub fn sum<I: IntoIterator<Item = LogReal>>(terms: I) -> Self {
        let terms: Vec<LogReal> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let pool = |s: Sign| {
            let logs: Vec<f64> = terms.iter().filter(|t| t.sign == s).map(|t| t.log_mag).collect();
            let Some(max) = logs.iter().copied().reduce(f64::max) else {
                return Self::ZERO;
            };
            let mut acc = NeumaierSum::default();
            for l in logs {
                acc.add((l - max).exp());
            }
            Self::new(s, max + acc.value().ln())
        };
        pool(Sign::Positive) + pool(Sign::Negative)
    }
}

impl Add for LogReal {
    type Output = LogReal;

    fn add(self, rhs: LogReal) -> LogReal {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag { (self, rhs) } else { (rhs, self) };
        let d = small.log_mag - big.log_mag;
        if big.sign == small.sign {
            LogReal::new(big.sign, big.log_mag + d.exp().ln_1p())
        } else if d == 0.0 {
            LogReal::ZERO
        } else {
            LogReal::new(big.sign, big.log_mag + (-d.exp()).ln_1p())
        }
    }
}

impl Neg for LogReal {
    type Output = LogReal;

    fn neg(self) -> LogReal {
        LogReal { sign: self.sign.flip(), log_mag: self.log_mag }
    }
}

impl Sub for LogReal {
    type Output = LogReal;

    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl Mul for LogReal {
    type Output = LogReal;

    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal::new(self.sign.times(rhs.sign), self.log_mag + rhs.log_mag)
    }
}

impl Div for LogReal {
    type Output = LogReal;

    fn div(self, rhs: LogReal) -> LogReal {
        assert!(!rhs.is_zero(), "LogReal division by zero");
        LogReal::new(self.sign.times(rhs.sign), self.log_mag - rhs.log_mag)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Some(Ordering::Equal),
                Sign::Positive => self.log_mag.partial_cmp(&other.log_mag),
                Sign::Negative => other.log_mag.partial_cmp(&self.log_mag),
            },
            o => Some(o),
        }
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "exp({})", self.log_mag),
            Sign::Negative => write!(f, "-exp({})", self.log_mag),
        }
    }
}

/// Natural log of a positive big integer, accurate to double precision at
/// any size.
pub fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Kahan–Babuška–Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn close(a: f64, b: f64) -> bool {
        ((a - b) / b).abs() < 1e-12
    }

    #[test]
    fn rational_round_trip() {
        for (p, q) in [(1, 3), (-22, 7), (123456789, 1000), (1, 1 << 40)] {
            let r = ratio(p, q);
            let l = LogReal::from_rational(&r);
            assert!(close(l.to_f64(), p as f64 / q as f64));
        }
        assert!(LogReal::from_rational(&ratio(0, 5)).is_zero());
    }

    #[test]
    fn huge_integers_have_accurate_logs() {
        let x = BigInt::from(3).pow(5000);
        assert!(close(ln_bigint(&x), 5000.0 * 3f64.ln()));
    }

    #[test]
    fn signed_addition() {
        let a = LogReal::from_f64(5.0);
        let b = LogReal::from_f64(-3.0);
        assert!(close((a + b).to_f64(), 2.0));
        assert!(close((b + a).to_f64(), 2.0));
        assert!(close((b + b).to_f64(), -6.0));
        assert!((a - a).is_zero());
        assert!(close((a * b).to_f64(), -15.0));
        assert!(close((a / b).to_f64(), -5.0 / 3.0));
        assert!(close(b.powi(3).to_f64(), -27.0));
        assert!(close(b.powi(2).to_f64(), 9.0));
    }

    #[test]
    fn sum_handles_far_apart_magnitudes() {
        let terms = [LogReal::from_log(1e6), LogReal::from_log(1e6), LogReal::from_f64(-1.0)];
        let s = LogReal::sum(terms);
        assert!((s.log_magnitude() - (1e6 + 2f64.ln())).abs() < 1e-9);
        let small = LogReal::sum([1.0, 2.0, -0.5].map(LogReal::from_f64));
        assert!(close(small.to_f64(), 2.5));
        assert!(LogReal::sum([]).is_zero());
    }

    #[test]
    fn ordering_respects_sign() {
        let neg_big = LogReal::from_f64(-100.0);
        let neg_small = LogReal::from_f64(-1.0);
        assert!(neg_big < neg_small);
        assert!(neg_small < LogReal::ZERO);
        assert!(LogReal::ZERO < LogReal::ONE);
        assert!(LogReal::from_log(1e9) > LogReal::from_log(5.0));
    }

    #[test]
    fn neumaier_beats_naive_summation() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let s: NeumaierSum = xs.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
    }
}
