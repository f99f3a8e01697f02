//! Worst-case and synthetic inputs: wedge and star curve pairs, fork
//! matrices, and random walks.

mod fork;
mod star;
mod walk;
mod wedge;

pub use fork::{gen_fork_matrix, ForkSpec};
pub use star::{gen_star, StarAnalytic, StarSpec};
pub use walk::gen_random_walk;
pub use wedge::{gen_wedge, WedgeAnalytic, WedgeSpec};

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("{name} = {value} is out of range: {expected}")]
    Range {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error(transparent)]
    Geom(#[from] crate::GeomError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
}

pub(crate) fn range(name: &'static str, value: f64, expected: &'static str) -> GenError {
    GenError::Range { name, value, expected }
}
