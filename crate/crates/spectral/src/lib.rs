//! Spectral data of the binary Burnside kernel.
//!
//! Eigenvalues are `β_k = C(2k,k)² / 2^{4k}` with multiplicity `C(n, 2k)`,
//! plus zero with multiplicity `2^{n-1}`. Two eigenbases are built:
//!
//! * subset vectors `f_S(x) = (-1)^{|x_S|} C(|S|, |x_S|)`, simple but not
//!   orthogonal;
//! * the orthogonal basis `f_Q^{m,ℓ}` indexed by a two-row standard
//!   tableau `Q` of shape `(n-m, m)` and a level `ℓ`, obtained from the
//!   column reading tableau by intertwining operators.
//!
//! Vectors over `C_2^n` are dense `Vec<Rational>` indexed like
//! [`chain_core::State::index`]: bit `i - 1` of the index is coordinate `i`.

pub mod basis;
pub mod eigen;
pub mod error;
pub mod gram;
pub mod operators;
pub mod poly;
pub mod subset;
pub mod tableau;

pub use basis::{
    build_basis, build_f_q, f_column_reading, g_column_reading, g_q, norm_f_q, norm_f_q_by_sum, pi_inner,
    OrthoVector, SpectralBasis,
};
pub use eigen::{beta, is_eigenvector, multiplicity_table, Eigenvalue};
pub use error::SpectralError;
pub use gram::{gram_normalized, johnson_eigenvalue, self_inner_product, GramEntry};
pub use operators::{jm_apply, tau_apply, transposition_apply};
pub use poly::{chebyshev_eval, chebyshev_vector, hahn_eval, hahn_norm, hahn_weight, t_scalar};
pub use subset::{f_subset_eval, f_subset_vector, subset_eigenvalue, subsets_of_size};
pub use tableau::{enumerate_tableaux, gamma_q, Tableau};
