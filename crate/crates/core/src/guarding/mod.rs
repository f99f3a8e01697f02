//! Guarding sets: sets of grid cells that every traversal must hit, each
//! cell at distance at least `δ/θ`.
//!
//! Construction follows a BFS from the start cell, then optional removal
//! of avoidable members and row/column trimming, which shrinks the set to
//! `O(c·t)` members on c-packed curves at the price of `θ = 4`.

mod avoid;
mod build;
mod io;
mod trim;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use avoid::{find_avoidable, remove_avoidable};
pub use build::{build_guarding, partition, CellClass, Partition};
pub use io::{read_members_csv, write_members_csv, Sidecar};
pub use trim::{trim_full, trim_row, trim_row_with, TrimContext, TrimOutcome};
pub use verify::{
    check_predecessors, extended_groups, theorem_bound, verify_guarding, ExtendedGroupReport, GuardingCheck, Violation,
};

use crate::metrics::MetricsError;
use crate::packing::PackingError;

/// A grid cell `(i, j)`: vertex `i` of P matched with vertex `j` of Q.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuardingSet {
    members: BTreeSet<Cell>,
    theta: f64,
    delta: f64,
}

impl GuardingSet {
    pub fn new(members: impl IntoIterator<Item = Cell>, theta: f64, delta: f64) -> Self {
        Self {
            members: members.into_iter().collect(),
            theta,
            delta,
        }
    }

    pub fn members(&self) -> &BTreeSet<Cell> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.members.contains(&c)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    /// Members in row `i`, by column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.range((i, 0)..(i + 1, 0)).map(|c| c.1)
    }

    /// Members in column `j`, by row.
    pub fn column(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().filter(move |c| c.1 == j).map(|c| c.0)
    }

    pub fn transpose(&self) -> Self {
        Self {
            members: self.members.iter().map(|&(i, j)| (j, i)).collect(),
            theta: self.theta,
            delta: self.delta,
        }
    }

    pub(crate) fn insert(&mut self, c: Cell) -> bool {
        self.members.insert(c)
    }

    pub(crate) fn remove(&mut self, c: Cell) -> bool {
        self.members.remove(&c)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GuardingError {
    #[error("theta must be at least 1, got {0}")]
    ThetaBelowOne(f64),
    #[error("distance zero: distortion undefined")]
    ZeroDistance,
    #[error("delta {given} disagrees with the matrix traversal value {computed}")]
    InconsistentDelta { given: f64, computed: f64 },
    #[error("index {index} out of range for {len} lines")]
    OutOfRange { index: usize, len: usize },
    #[error("missing interval structure: {0}")]
    MissingStructure(String),
    #[error("{name} = {value} is out of range")]
    Parameter { name: &'static str, value: f64 },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error("{0}")]
    Io(String),
}
