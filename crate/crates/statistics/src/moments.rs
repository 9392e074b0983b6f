use std::fmt;

use exact_core::{format_rational, Rational};

/// How a moment was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    ExactSum,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::ExactSum => "exact-sum",
        })
    }
}

/// Mean and variance of a named quantity after `l` steps (`None` for the
/// stationary law).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub quantity: &'static str,
    pub l: Option<u64>,
    pub mean: Rational,
    pub variance: Rational,
    pub provenance: Provenance,
}

impl fmt::Display for MomentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let when = self.l.map_or_else(|| "stationary".to_string(), |l| format!("l={l}"));
        write!(
            f,
            "{} ({when}, {}): mean {}, variance {}",
            self.quantity,
            self.provenance,
            format_rational(&self.mean),
            format_rational(&self.variance)
        )
    }
}
