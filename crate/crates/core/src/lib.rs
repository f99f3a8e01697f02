//! Discrete Fréchet distance and dynamic time warping under projection to a
//! random line.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`]: points, curves, uniform directions, projections and the
//!   closed-form laws for how much a single distance shrinks.
//! * [`metrics`]: distance matrices, free space, traversals, the two DP
//!   distances and their brute-force oracles.
//! * [`packing`]: c-packedness estimation and the sparse-radius and
//!   interval-merging subroutines.
//! * [`guarding`]: guarding sets, avoidable pairs, trimming and validators.
//! * [`generators`]: wedge, star, fork and random-walk families.
//! * [`montecarlo`]: the seeded distortion harness and its reports.
//!
//! Indices are 0-based in the API. File formats that print grid indices
//! use 1-based numbering.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod generators;
pub mod geom;
pub mod guarding;
pub mod metrics;
pub mod montecarlo;
pub mod packing;
pub mod rng;

pub use geom::{Curve, GeomError, Point, UnitVector};
pub use guarding::{GuardingSet, Partition};
pub use metrics::{DistanceKind, DistanceMatrix, FreeSpaceMatrix, Traversal};
pub use montecarlo::{DistortionSample, ExperimentConfig, ExperimentReport};
pub use packing::{IntervalSet, PackednessReport};

/// Any error raised by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Metrics(#[from] metrics::MetricsError),
    #[error(transparent)]
    Packing(#[from] packing::PackingError),
    #[error(transparent)]
    Guarding(#[from] guarding::GuardingError),
    #[error(transparent)]
    Generator(#[from] generators::GenError),
    #[error(transparent)]
    MonteCarlo(#[from] montecarlo::McError),
}
