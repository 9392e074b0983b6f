//! Alternation counts and ones counts along the binary chain.
//!
//! `T(x) = #{i : x_i ≠ x_{i+1}}` expands as `Σ_i (1 - f_{i,i+1}(x)) / 3`
//! over eigenvectors with eigenvalue `1/4`, which gives its mean after
//! `ℓ` steps in closed form. Products of those eigenvectors expand again
//! into eigenvectors, which gives the variance. Under the stationary law,
//! `T/(n-1)` tends to `2U(1-U)`, whose CDF is `1 - √(1-2t)` on `[0, 1/2]`.

pub mod alternations;
pub mod error;
pub mod histogram;
pub mod moments;
pub mod ones;

pub use alternations::{
    alternation_distribution, alternations, expected_alternations_after, stationary_alternation_mean,
    stationary_alternation_variance, alternation_variance_after,
};
pub use error::StatsError;
pub use histogram::{alternation_histogram, limit_cdf, sup_cdf_discrepancy, FitReport, Histogram, DEFAULT_BINS};
pub use moments::{MomentReport, Provenance};
pub use ones::{centered_pair_product_after, ones_covariance, ones_covariance_after, ones_moments};
