//! Pairwise distances, free space, traversals and the two DP distances.
//!
//! Grid cells are addressed `(i, j)` with `i` indexing P (rows) and `j`
//! indexing Q (columns), both 0-based.

mod dp;
mod matrix;
pub mod oracle;
mod traversal;

pub use dp::{
    discrete_frechet, discrete_frechet_matrix, discrete_frechet_value, dtw, dtw_matrix, dtw_scalars, dtw_value,
    frechet_scalars,
};
pub use matrix::{distance_matrix, free_space, traversal_exists, DistanceMatrix, FreeSpaceMatrix};
pub use oracle::{discrete_frechet_bruteforce, dtw_bruteforce, BRUTEFORCE_LIMIT};
pub use traversal::{Traversal, TraversalGraph};

use crate::geom::{FormatError, GeomError};

/// Which traversal cost is minimised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    Frechet,
    Dtw,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Frechet => "frechet",
            DistanceKind::Dtw => "dtw",
        }
    }

    pub fn on_scalars(self, p: &[f64], q: &[f64]) -> f64 {
        match self {
            DistanceKind::Frechet => frechet_scalars(p, q),
            DistanceKind::Dtw => dtw_scalars(p, q),
        }
    }

    pub fn value(self, p: &crate::Curve, q: &crate::Curve) -> Result<f64, MetricsError> {
        match self {
            DistanceKind::Frechet => discrete_frechet_value(p, q),
            DistanceKind::Dtw => dtw_value(p, q),
        }
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "frechet" => Ok(DistanceKind::Frechet),
            "dtw" => Ok(DistanceKind::Dtw),
            other => Err(format!("unknown distance kind {other:?}")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("brute force needs t_P + t_Q <= {limit}, got {total}")]
    GuardExceeded { total: usize, limit: usize },
    #[error("free-space threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid traversal: {0}")]
    InvalidTraversal(String),
    #[error(transparent)]
    Parse(#[from] FormatError),
}

pub(crate) fn check_dims(p: &crate::Curve, q: &crate::Curve) -> Result<(), MetricsError> {
    if p.dim() != q.dim() {
        return Err(MetricsError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}
