//! Covering-radius bounds for finite nets of unit vectors.
//!
//! The thickness of a normed space is the smallest `ε` for which finitely many
//! unit vectors have `ε`-balls covering the whole unit ball. This crate brackets
//! the covering radius of concrete nets:
//!
//! * [`spaces`] evaluates norms of `ℓ_p^d`, step-function `L_p`, finite `ℓ_p`-sums
//!   and the polyhedral `k`-norm;
//! * [`nets`] builds the explicit nets (indicator nets, antipodal pairs, product
//!   nets over sphere grids, embedded and hyperplane nets, …);
//! * [`witnesses`] builds, for any net, a ball point with a guaranteed distance
//!   from every net point;
//! * [`covering`] certifies lower bounds by evaluation, estimates the covering
//!   radius by multistart pattern search and reports closed-form upper bounds;
//! * [`inequalities`] checks the Clarkson and Hanner inequalities numerically.

pub mod covering;
pub mod error;
pub mod inequalities;
pub mod nets;
pub mod spaces;
pub mod witnesses;

pub use covering::{CoveringReport, SearchConfig, ThicknessSearchResult};
pub use error::{Error, Result};
pub use nets::Net;
pub use spaces::{Exponent, Point, SpaceSpec};
pub use witnesses::WitnessReport;

/// Tolerance for algebraic identities (homogeneity, equality cases, inequality slack).
pub const REL_TOL: f64 = 1e-12;

/// Tolerance for unit-norm membership of net points.
pub const NET_UNIT_TOL: f64 = 1e-9;

/// Derives the seed of stream `stream` from a base seed (splitmix64 finalizer).
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on.
/// Output order always follows the index.
pub(crate) fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
