//! Distance curves over a range of step counts.

use std::fmt;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use chain_core::{orbit_labels, Kernel, State};
use exact_core::{format_rational, LogReal, Rational, ScaledVector, Sign};
use num_traits::Signed;
use rayon::prelude::*;

use crate::avg::{chi2_avg_exact, chi2_avg_log};
use crate::distances::{check_state, chi2_of_law, tv_of_law};
use crate::error::{range, MixingError};

/// A distance value, exact or as sign and log-magnitude.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Log(LogReal),
}

impl Value {
    pub fn to_log(&self) -> LogReal {
        match self {
            Value::Exact(r) => LogReal::from_rational(r),
            Value::Log(l) => *l,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Value::Exact(r) => !r.is_negative(),
            Value::Log(l) => l.sign() != Sign::Negative,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&format_rational(r)),
            Value::Log(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    ChiSquare,
    TotalVariation,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::ChiSquare => "chi-square",
            Metric::TotalVariation => "total-variation",
        })
    }
}

/// Where the chain starts. `Orbit(i)` uses the sorted representative of
/// the `i`-th orbit label; for binary states that is the orbit with `i` ones.
#[derive(Clone, Debug, PartialEq)]
pub enum Start {
    State(State),
    Average,
    Orbit(usize),
}

impl fmt::Display for Start {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Start::State(s) => write!(f, "{s}"),
            Start::Average => f.write_str("average"),
            Start::Orbit(i) => write!(f, "orbit {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceCurve {
    pub n: usize,
    pub k: u8,
    pub start: Start,
    pub metric: Metric,
    pub points: Vec<(u64, Value)>,
}

impl DistanceCurve {
    /// True when successive values never increase. Chi-square curves must
    /// satisfy this; total variation curves are reported as they come.
    pub fn is_nonincreasing(&self) -> bool {
        self.points.windows(2).all(|w| match (&w[0].1, &w[1].1) {
            (Value::Exact(a), Value::Exact(b)) => b <= a,
            (a, b) => b.to_log() <= a.to_log(),
        })
    }

    /// CSV with columns `n,start,metric,step,value_num,value_den` for exact
    /// curves, or `n,start,metric,step,log_value,sign` for log-space ones.
    pub fn to_csv(&self) -> String {
        let log = self.points.iter().any(|(_, v)| matches!(v, Value::Log(_)));
        let mut out = String::from(if log {
            "n,start,metric,step,log_value,sign\n"
        } else {
            "n,start,metric,step,value_num,value_den\n"
        });
        for (step, v) in &self.points {
            let _ = write!(out, "{},{},{},{},", self.n, self.start, self.metric, step);
            match v {
                Value::Exact(r) if !log => {
                    let _ = writeln!(out, "{},{}", r.numer(), r.denom());
                }
                other => {
                    let l = other.to_log();
                    let _ = writeln!(out, "{},{}", l.log_magnitude(), sign_number(l.sign()));
                }
            }
        }
        out
    }
}

pub(crate) fn sign_number(s: Sign) -> i8 {
    match s {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

fn measure(kernel: &Kernel, metric: Metric, mu: &ScaledVector) -> Rational {
    match metric {
        Metric::ChiSquare => chi2_of_law(kernel, mu),
        Metric::TotalVariation => tv_of_law(kernel, mu),
    }
}

/// Exact curve over `steps`. The law is advanced one step at a time, so
/// the cost is that of the last step count. The average start is the
/// π-average, taken over one representative per orbit.
pub fn distance_curve(
    kernel: &Kernel,
    start: Start,
    metric: Metric,
    steps: RangeInclusive<u64>,
) -> Result<DistanceCurve, MixingError> {
    let starts: Vec<State> = match &start {
        Start::State(s) => {
            check_state(kernel, s)?;
            vec![s.clone()]
        }
        Start::Orbit(i) => {
            let labels = orbit_labels(kernel.n(), kernel.k());
            let label = labels
                .get(*i)
                .ok_or_else(|| range("orbit", format!("index {i}, only {} orbits", labels.len())))?;
            vec![State::from_counts(label)?]
        }
        Start::Average => orbit_labels(kernel.n(), kernel.k())
            .iter()
            .map(|c| State::from_counts(c))
            .collect::<Result<_, _>>()?,
    };
    let weight = Rational::new(1.into(), starts.len().into());
    let per_start: Vec<Vec<Rational>> = starts
        .par_iter()
        .map(|x| {
            let mut mu = ScaledVector::point_mass(kernel.size(), x.index());
            let mut done = 0u64;
            let mut out = Vec::new();
            for l in steps.clone() {
                while done < l {
                    mu = mu.times(kernel.matrix());
                    done += 1;
                }
                out.push(measure(kernel, metric, &mu));
            }
            out
        })
        .collect();
    let points = steps
        .clone()
        .enumerate()
        .map(|(i, l)| {
            let total: Rational = per_start.iter().map(|v| v[i].clone()).sum();
            (l, Value::Exact(total * &weight))
        })
        .collect();
    Ok(DistanceCurve { n: kernel.n(), k: kernel.k(), start, metric, points })
}

/// The averaged chi-square curve from the eigenvalue sum; needs no kernel.
pub fn avg_chi2_curve(n: usize, steps: RangeInclusive<u64>, log_space: bool) -> Result<DistanceCurve, MixingError> {
    let points = steps
        .map(|l| {
            let v = if log_space {
                Value::Log(chi2_avg_log(n as u64, l)?)
            } else {
                Value::Exact(chi2_avg_exact(n, l)?)
            };
            Ok((l, v))
        })
        .collect::<Result<_, MixingError>>()?;
    Ok(DistanceCurve { n, k: 2, start: Start::Average, metric: Metric::ChiSquare, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avg::chi2_avg_exact;
    use crate::distances::{chi2_exact, tv_exact};
    use chain_core::build_kernel;

    #[test]
    fn curves_reuse_the_evolving_law() {
        let k = build_kernel(4, 2).unwrap();
        let x = State::parse("0011", 2).unwrap();
        let c = distance_curve(&k, Start::State(x.clone()), Metric::ChiSquare, 0..=5).unwrap();
        for (l, v) in &c.points {
            assert_eq!(v, &Value::Exact(chi2_exact(&k, &x, *l).unwrap()));
        }
        assert!(c.is_nonincreasing());
        let t = distance_curve(&k, Start::Orbit(2), Metric::TotalVariation, 2..=3).unwrap();
        assert_eq!(t.points[1].1, Value::Exact(tv_exact(&k, &x, 3).unwrap()));
    }

    #[test]
    fn average_start_matches_the_formula() {
        let k = build_kernel(5, 2).unwrap();
        let c = distance_curve(&k, Start::Average, Metric::ChiSquare, 1..=3).unwrap();
        for (l, v) in &c.points {
            assert_eq!(v, &Value::Exact(chi2_avg_exact(5, *l).unwrap()));
        }
        assert_eq!(avg_chi2_curve(5, 1..=3, false).unwrap().points, c.points);
    }

    #[test]
    fn csv_layouts() {
        let c = avg_chi2_curve(2, 1..=1, false).unwrap();
        assert_eq!(c.to_csv(), "n,start,metric,step,value_num,value_den\n2,average,chi-square,1,1,16\n");
        let c = avg_chi2_curve(2, 1..=1, true).unwrap();
        assert!(c.to_csv().starts_with("n,start,metric,step,log_value,sign\n2,average,chi-square,1,-2.77258"));
    }

    #[test]
    fn unknown_orbit_is_a_range_error() {
        let k = build_kernel(2, 2).unwrap();
        assert!(matches!(
            distance_curve(&k, Start::Orbit(3), Metric::ChiSquare, 0..=1),
            Err(MixingError::Range { .. })
        ));
    }
}
