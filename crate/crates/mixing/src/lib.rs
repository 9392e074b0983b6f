//! Distances to stationarity for the Burnside process.
//!
//! Exact chi-square and total variation come from pushing a point mass
//! through the integer kernel. The chi-square distance also has a spectral
//! form over the orthogonal basis, an averaged form
//! `Σ_k C(n, 2k) β_k^{2ℓ}` that runs in log space for very large `n`, and
//! a closed form from the unit state.

pub mod avg;
pub mod bounds;
pub mod curve;
pub mod cutoff;
pub mod distances;
pub mod error;
pub mod expansion;
pub mod one_one;

pub use avg::{chi2_avg, chi2_avg_by_orbits, chi2_avg_definition, chi2_avg_exact, chi2_avg_log, chi2_avg_log_terms, AvgMode};
pub use bounds::{
    bound_envelopes, self_loop_lower_bound, self_loop_lower_bound_log, stationary_mass, Bound, BoundReport, BoundSource,
    Envelope,
};
pub use curve::{avg_chi2_curve, distance_curve, DistanceCurve, Metric, Start, Value};
pub use cutoff::{cutoff_scan, cutoff_time, scan_to_csv, steps_at, CutoffVariant, ScanRow};
pub use distances::{chi2_exact, chi2_of_law, chi2_of_row, law_after, law_by_matrix_power, tv_exact, tv_of_law, tv_of_row};
pub use error::MixingError;
pub use expansion::chi2_spectral;
pub use one_one::{
    chi2_from_one_one, leading_constant, one_one_envelope, one_one_pieces, unit_value_level0, unit_value_level1,
    OneOneEnvelope, Piece, ONE_ONE_LIMIT, ONE_ONE_LOWER, ONE_ONE_UPPER,
};
