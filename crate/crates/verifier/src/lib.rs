//! Exact checks of the binary Burnside chain's spectral theory, its
//! conjectures, and the numerical claims built on them.
//!
//! Every check returns a [`CheckResult`] naming the first counterexample it
//! met. Checks that cannot start at all (bad parameters) return a
//! [`VerifierError`]. Apart from the Monte Carlo fits and the float survey
//! of [`ck`], everything is computed in exact integer or rational
//! arithmetic, so results do not depend on seeds or thread counts.

pub mod appendix;
pub mod basis;
pub mod chain;
pub mod ck;
pub mod conjecture;
pub mod distance;
pub mod eigen;
pub mod error;
pub mod johnson;
pub mod lumping;
pub mod multiplicity;
pub mod result;
pub mod stats;
pub mod suite;

pub use appendix::{verify_identities_appendix_a, AppendixGrid};
pub use basis::verify_orthobasis;
pub use chain::{verify_kernel, verify_sampler_gof};
pub use ck::{verify_ck_multiplicities, CkTarget};
pub use conjecture::verify_pplus_conjecture;
pub use distance::{verify_avg_formula, verify_constant_start, verify_cutoff, verify_one_one, verify_one_one_trend};
pub use eigen::verify_eigenstructure;
pub use error::VerifierError;
pub use johnson::verify_johnson_gram;
pub use lumping::verify_lumpings;
pub use result::{CheckResult, Checker, ParamValue, Status};
pub use stats::{verify_alternation_cdf, verify_alternation_fit, verify_alternation_moments, verify_statistics_identities};
pub use suite::{blocking_failures, run_suite, Suite, KNOWN_UNATTAINABLE};
