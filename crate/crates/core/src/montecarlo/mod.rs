//! Seeded distortion experiments.
//!
//! A sample is the ratio `c = dist(P', Q') / dist(P, Q) ∈ [0, 1]` for one
//! random direction. Directions for a pair are drawn in blocks, each block
//! from its own substream keyed by `(seed, pair_id, block)`, so results do
//! not depend on the number of worker threads. The same directions serve
//! every protocol and every length of a pair.

mod corpus;
mod report;
mod run;
mod stats;

use serde::{Deserialize, Serialize};

pub use corpus::{sample_pairs, CorpusManifest};
pub use report::{write_bucket_csv, write_ecdf_csv, write_raw_csv, Summary};
pub use run::{
    directions, run_corpus, run_pair, run_pair_with, run_prefix_protocol, run_subcurve_protocol, CorpusPair,
    Exclusions, ExperimentReport, ProtocolRows,
};
pub use stats::{bucket_stats, ecdf, reduction_frequencies, BucketRow};

use crate::metrics::DistanceKind;
use crate::UnitVector;

/// Base distances below this are treated as zero.
pub const ZERO_DISTANCE: f64 = 1e-12;
/// Directions per RNG substream.
pub const BLOCK: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Directions per pair.
    pub samples: usize,
    pub seed: u64,
    /// Ambient dimension of the curves.
    pub dim: usize,
    pub kind: DistanceKind,
    pub prefix_lengths: Vec<usize>,
    pub subcurve: bool,
    pub gammas: Vec<f64>,
    /// Thread count; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(seed: u64, dim: usize) -> Self {
        Self {
            samples: 1000,
            seed,
            dim,
            kind: DistanceKind::Frechet,
            prefix_lengths: Vec::new(),
            subcurve: false,
            gammas: default_gammas(),
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.samples == 0 {
            return Err(McError::Config("samples must be at least 1".into()));
        }
        if !(2..=5).contains(&self.dim) {
            return Err(McError::Config(format!("dimension {} not in 2..=5", self.dim)));
        }
        if let Some(g) = self.gammas.iter().find(|g| !(**g > 0.0 && **g < 1.0)) {
            return Err(McError::Config(format!("gamma {g} not in (0, 1)")));
        }
        if self.prefix_lengths.contains(&0) {
            return Err(McError::Config("lengths must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(McError::Config("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// `{0.1, 0.2, ..., 0.9}`.
pub fn default_gammas() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

/// Bucket boundaries used when none are given.
pub fn default_buckets() -> Vec<usize> {
    vec![10, 50, 100, 150, 200, 250, 300, 350, 400]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Whole,
    Prefix,
    Subcurve,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Whole => "whole",
            Protocol::Prefix => "prefix",
            Protocol::Subcurve => "subcurve",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionSample {
    pub direction: UnitVector,
    pub ratio: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum McError {
    #[error("undefined distortion: base distance {0} is zero")]
    UndefinedDistortion(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("curve dimension {found} does not match configured {expected}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Geom(#[from] crate::GeomError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
    #[error("{0}")]
    Io(String),
}
