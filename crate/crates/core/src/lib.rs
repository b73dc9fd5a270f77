//! Exact computations on subset sums, sumsets and generalized arithmetic
//! progressions, with brute-force cross-checks for small instances.

pub mod arith;
pub mod config;
pub mod error;
pub mod gap;
pub mod geometry;
pub mod int_set;
pub mod io;
pub mod nonavg;
pub mod rng;
pub mod structure;
pub mod suites;
pub mod sumsets;

pub use arith::Rational;
pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use gap::Gap;
pub use geometry::{PointCloud, Zonotope};
pub use int_set::IntSet;

/// Default enumeration cap (elements or window slots).
pub const DEFAULT_CAP: u64 = 1 << 26;
