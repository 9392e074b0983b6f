//! Known bounds placed next to exact distances.

use std::fmt;

use chain_core::{kernel_entry, orbit_count, Kernel, State};
use exact_core::{multinomial, LogReal, Rational};
use num_traits::{One, Zero};

use crate::distances::{chi2_of_law, law_after, tv_of_law};
use crate::error::MixingError;
use crate::expansion::pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// `TV ≤ n (1/2)^ℓ`, from coupling coordinates.
    Aldous,
    /// `4 TV² ≤ χ²`.
    FourTvSquared,
    /// `χ²_x(ℓ) ≤ TV_x(2ℓ) / π(x)`.
    DoubledSteps,
    /// `(1/4)^{ℓ+1} ≤ TV` from the all-zeros or all-ones state, `n ≥ 2`
    /// (at `n = 1` the chain is stationary after one step).
    ConstantStartLower,
    /// `TV ≤ 4 (1/4)^ℓ` from the all-zeros or all-ones state.
    ConstantStartUpper,
    /// `χ²_x(ℓ) ≥ (K(x,x)^ℓ / π(x) - 1)² π(x)` while `K(x,x)^ℓ ≥ π(x)`.
    SelfLoop,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Aldous => "aldous-coupling",
            BoundSource::FourTvSquared => "four-tv-squared",
            BoundSource::DoubledSteps => "doubled-steps",
            BoundSource::ConstantStartLower => "constant-start-lower",
            BoundSource::ConstantStartUpper => "constant-start-upper",
            BoundSource::SelfLoop => "self-loop",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub source: BoundSource,
    pub value: Rational,
}

/// One exact value with every applicable bound. Bounds that do not apply
/// are left out rather than recorded as infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub exact: Rational,
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
}

impl Envelope {
    pub fn violations(&self) -> Vec<BoundSource> {
        let low = self.lower.iter().filter(|b| b.value > self.exact);
        let high = self.upper.iter().filter(|b| b.value < self.exact);
        low.chain(high).map(|b| b.source).collect()
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn best_lower(&self) -> Option<&Bound> {
        self.lower.iter().max_by(|a, b| a.value.cmp(&b.value))
    }

    pub fn best_upper(&self) -> Option<&Bound> {
        self.upper.iter().min_by(|a, b| a.value.cmp(&b.value))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub l: u64,
    pub tv: Envelope,
    pub chi2: Envelope,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.tv.holds() && self.chi2.holds()
    }
}

fn quarter_pow(e: u64) -> Rational {
    pow(&Rational::new(1.into(), 4.into()), e)
}

pub fn bound_envelopes(kernel: &Kernel, x: &State, l: u64) -> Result<BoundReport, MixingError> {
    let mut mu = law_after(kernel, x, l)?;
    let tv = tv_of_law(kernel, &mu);
    let chi2 = chi2_of_law(kernel, &mu);
    for _ in 0..l {
        mu = mu.times(kernel.matrix());
    }
    let tv_doubled = tv_of_law(kernel, &mu);
    let pi_x = kernel.pi(x.index());
    let binary = x.k() == 2;
    let constant = x.digits().iter().all(|&d| d == x.digits()[0]);

    let mut tv_env = Envelope { exact: tv.clone(), lower: Vec::new(), upper: Vec::new() };
    if binary {
        tv_env.upper.push(Bound {
            source: BoundSource::Aldous,
            value: Rational::from_integer(x.n().into()) * pow(&Rational::new(1.into(), 2.into()), l),
        });
        if constant && x.n() >= 2 {
            tv_env.lower.push(Bound { source: BoundSource::ConstantStartLower, value: quarter_pow(l + 1) });
            tv_env.upper.push(Bound {
                source: BoundSource::ConstantStartUpper,
                value: Rational::from_integer(4.into()) * quarter_pow(l),
            });
        }
    }

    let mut chi2_env = Envelope { exact: chi2, lower: Vec::new(), upper: Vec::new() };
    chi2_env.lower.push(Bound { source: BoundSource::FourTvSquared, value: Rational::from_integer(4.into()) * &tv * &tv });
    chi2_env.lower.push(Bound { source: BoundSource::SelfLoop, value: self_loop_lower_bound(x, l)? });
    chi2_env.upper.push(Bound { source: BoundSource::DoubledSteps, value: tv_doubled / pi_x });

    Ok(BoundReport { l, tv: tv_env, chi2: chi2_env })
}

/// `π(x) = 1 / (Z |O_x|)` without building a kernel.
pub fn stationary_mass(x: &State) -> Rational {
    let counts: Vec<u64> = x.counts().iter().map(|&c| c as u64).collect();
    let z = orbit_count(x.n(), x.k());
    Rational::new(1.into(), multinomial(&counts) * z)
}

/// The `y = x` term of the chi-square sum with `K^ℓ(x,x)` replaced by its
/// lower estimate `K(x,x)^ℓ`. Once `K(x,x)^ℓ` falls below `π(x)` that
/// replacement no longer bounds the term from below and zero is returned,
/// so the result is nonincreasing in `ℓ`.
pub fn self_loop_lower_bound(x: &State, l: u64) -> Result<Rational, MixingError> {
    let stay = pow(&kernel_entry(x, x)?, l);
    let pi = stationary_mass(x);
    if stay <= pi {
        return Ok(Rational::zero());
    }
    let excess = &stay / &pi - Rational::one();
    Ok(&excess * &excess * pi)
}

/// [`self_loop_lower_bound`] in log space, for step counts where the exact
/// power of `K(x,x)` would be huge.
pub fn self_loop_lower_bound_log(x: &State, l: u64) -> Result<LogReal, MixingError> {
    let stay = LogReal::from_rational(&kernel_entry(x, x)?).powi(l);
    let pi = LogReal::from_rational(&stationary_mass(x));
    if stay <= pi {
        return Ok(LogReal::ZERO);
    }
    let excess = stay / pi - LogReal::ONE;
    Ok(excess * excess * pi)
}
