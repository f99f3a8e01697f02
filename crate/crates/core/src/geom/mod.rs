//! Points, curves, random directions and projections.

mod curve;
pub mod format;
mod point;
mod sphere;

pub use curve::Curve;
pub use format::{read_curve, write_curve, FormatError};
pub use point::{Point, MAX_DIM};
pub use sphere::{
    angle_to, dimension_constant, project_curve, project_point, project_scalars, reduction_bound, reduction_cdf,
    sample_unit_vector, AnglePdf, UnitVector,
};

#[derive(Debug, thiserror::Error)]
pub enum GeomError {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("curve has no vertices")]
    EmptyCurve,
    #[error("vertex {index} has dimension {found}, expected {expected}")]
    MixedDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector norm {0} is not 1")]
    NotUnit(f64),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("window [{start}, {start}+{len}) exceeds {available} vertices")]
    WindowOutOfRange { start: usize, len: usize, available: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: FormatError,
    },
}
