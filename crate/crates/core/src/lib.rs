//! Exact homological algebra over standard-graded quotient rings
//! `GF(p)[x_1..x_n]/I`.
//!
//! The crate computes minimal graded free resolutions, Betti numbers and
//! empirical complexity, Ext/Tor tables, depth, Yoneda products and the
//! pushout modules attached to Ext classes, and builds and verifies
//! complexity-reduction certificates (chains of pushouts that end in a
//! module of finite projective dimension), together with MCM
//! approximations over complete intersections.
//!
//! All computation is degreewise exact linear algebra over the prime
//! field, truncated at a configurable internal degree `D` and homological
//! degree `H`; every reported result carries its truncation window.

pub mod error;
pub mod fixtures;
pub mod gradedmod;
pub mod hilbert;
pub mod homalg;
pub mod linalg;
pub mod reducible;
pub mod resolve;
pub mod ringkernel;
pub mod yoneda;

pub use error::{Error, Result};
pub use hilbert::HilbertSeries;

/// Session-wide truncation and determinism parameters. Every reported
/// result carries these so numeric claims stay reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// internal degree truncation D
    pub max_degree: i64,
    /// homological degree truncation H
    pub max_hdeg: usize,
    /// seed for the randomized unit searches
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 16,
            max_hdeg: 12,
            seed: 0,
        }
    }
}
