//! The Burnside process for the symmetric group permuting coordinates of
//! k-ary n-tuples.
//!
//! From a state `x` the chain draws a uniform permutation `s` fixing `x`,
//! then a uniform tuple fixed by `s` (each cycle of `s` gets one uniform
//! value). Stationary measure: uniform over orbits, then uniform within.
//!
//! States are indexed little-endian in base `k`: coordinate `i` (1-based)
//! is digit `i - 1` of the index.

pub mod caps;
pub mod error;
pub mod kernel;
pub mod kernel_entry;
pub mod lumping;
pub mod oracle;
pub mod rng;
pub mod sampler;
pub mod state;

pub use caps::{StateCap, CAP_ENV};
pub use error::ChainError;
pub use kernel::{build_kernel, build_kernel_with_cap, orbit_count, Kernel};
pub use kernel_entry::{kernel_entry, kernel_entry_alphabet, kernel_entry_binary, scaled_entry, PairCounts};
pub use lumping::{
    lump_kernel_to_coordinates, lump_to_coordinates, lump_to_orbits, orbit_labels, OrbitKernel,
};
pub use oracle::{brute_force_entry, brute_force_kernel};
pub use rng::RngStream;
pub use sampler::{burnside_step, run_chain, sample_stationary};
pub use state::State;
