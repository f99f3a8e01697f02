//! c-packedness: ball–curve intersection length, a lower-bound estimator
//! for the packedness constant, and the sparse-radius and interval-merging
//! subroutines used by row trimming.

mod ball;
mod estimate;
mod intervals;
mod radius;

pub use ball::{ball_curve_length, segment_ball_length, segment_distance_range};
pub use estimate::{packedness_estimate, PackednessReport, DEFAULT_RESOLUTION};
pub use intervals::IntervalSet;
pub use radius::{merge_intervals, sparse_radius, SparseRadius, TANGENCY_TOL};

#[derive(Debug, thiserror::Error)]
pub enum PackingError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("curve needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("resolution must be at least 1")]
    ZeroResolution,
    #[error("vertex {index} lies at distance {distance} < b = {b}")]
    Precondition { index: usize, distance: f64, b: f64 },
    #[error("invalid interval set: {0}")]
    InvalidIntervals(String),
}
