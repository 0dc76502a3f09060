//! Facility location and radius computation on Helly-type graphs.
//!
//! The fast paths are randomized local searches and sampling procedures
//! whose per-step work is linear in the graph size:
//!
//! * [`facility::find_center`] returns a vertex of minimum cost-weighted
//!   eccentricity on a Helly graph.
//! * [`facility::find_medians`] returns the whole cost-weighted median set.
//! * [`khelly::radius`] computes the radius of a k-Helly graph, or an
//!   additive `+alpha` approximation on a (k, alpha)-Helly graph.
//!
//! Every fast path has a brute-force counterpart in [`oracle`], and
//! [`recognition`] certifies the Helly-type assumptions on small inputs.

pub mod bitset;
pub mod error;
pub mod facility;
pub mod gates;
pub mod generators;
pub mod graph;
pub mod khelly;
pub mod objective;
pub mod oracle;
pub mod recognition;

pub use bitset::CandidateSet;
pub use error::{Error, Result};
pub use graph::{Bfs, DistanceRow, Graph};
pub use objective::{CostFn, Objective};

/// Deterministic RNG used for every seeded procedure in the crate.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// Builds the crate's RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
