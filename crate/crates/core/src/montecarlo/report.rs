use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{ecdf, BucketRow, Exclusions, ExperimentConfig, ExperimentReport, McError};
use crate::geom::format::fmt_float;

fn csv_err(e: impl std::fmt::Display) -> McError {
    McError::Io(e.to_string())
}

/// `pair_id,protocol,complexity,sample_idx,ratio`; `sample_idx` is 1-based.
pub fn write_raw_csv<W: Write>(w: W, report: &ExperimentReport) -> Result<(), McError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["pair_id", "protocol", "complexity", "sample_idx", "ratio"])
        .map_err(csv_err)?;
    for r in &report.rows {
        for (k, v) in r.ratios.iter().enumerate() {
            out.write_record([
                r.pair_id.to_string(),
                r.protocol.name().to_string(),
                r.complexity.to_string(),
                (k + 1).to_string(),
                fmt_float(*v),
            ])
            .map_err(csv_err)?;
        }
    }
    out.flush().map_err(csv_err)
}

/// `pair_id,protocol,complexity,gamma,prob`.
pub fn write_ecdf_csv<W: Write>(w: W, report: &ExperimentReport) -> Result<(), McError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["pair_id", "protocol", "complexity", "gamma", "prob"])
        .map_err(csv_err)?;
    for r in &report.rows {
        for (g, p) in ecdf(&r.ratios, &report.config.gammas)? {
            out.write_record([
                r.pair_id.to_string(),
                r.protocol.name().to_string(),
                r.complexity.to_string(),
                fmt_float(g),
                fmt_float(p),
            ])
            .map_err(csv_err)?;
        }
    }
    out.flush().map_err(csv_err)
}

/// `protocol,bucket,gamma,count,mean,std,min,max`.
pub fn write_bucket_csv<W: Write>(w: W, table: &[BucketRow]) -> Result<(), McError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["protocol", "bucket", "gamma", "count", "mean", "std", "min", "max"])
        .map_err(csv_err)?;
    for b in table {
        out.write_record([
            b.protocol.name().to_string(),
            b.bucket.to_string(),
            fmt_float(b.gamma),
            b.count.to_string(),
            fmt_float(b.mean),
            fmt_float(b.std),
            fmt_float(b.min),
            fmt_float(b.max),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(csv_err)
}

/// JSON summary: configuration echo, exclusions, pairing and subcurve
/// offsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub rows: usize,
    pub samples_total: usize,
    pub exclusions: Exclusions,
    pub pairing: Vec<(u64, String, String)>,
    /// `(pair_id, complexity, offset into P, offset into Q)`, 1-based offsets.
    pub subcurve_offsets: Vec<(u64, usize, usize, usize)>,
    pub max_ratio: f64,
    pub metadata: serde_json::Value,
}

impl Summary {
    pub fn new(report: &ExperimentReport, metadata: serde_json::Value) -> Self {
        Self {
            config: report.config.clone(),
            seed: report.config.seed,
            rows: report.rows.len(),
            samples_total: report.rows.iter().map(|r| r.ratios.len()).sum(),
            exclusions: report.exclusions,
            pairing: report.pairing.clone(),
            subcurve_offsets: report
                .rows
                .iter()
                .filter_map(|r| r.offsets.map(|(a, b)| (r.pair_id, r.complexity, a + 1, b + 1)))
                .collect(),
            max_ratio: report
                .rows
                .iter()
                .flat_map(|r| r.ratios.iter().copied())
                .fold(0.0, f64::max),
            metadata,
        }
    }
}
