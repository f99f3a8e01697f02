use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{McError, Protocol, ProtocolRows, BLOCK};
use crate::geom::{project_point, sample_unit_vector};
use crate::rng::{substream, Purpose};

/// ECDF of one row evaluated on the γ grid.
type EcdfRow = Vec<(f64, f64)>;

/// `(γ, Pr[c ≤ γ])` for each grid value.
pub fn ecdf(samples: &[f64], gammas: &[f64]) -> Result<Vec<(f64, f64)>, McError> {
    if samples.is_empty() {
        return Err(McError::Empty("sample list"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(gammas
        .iter()
        .map(|&g| (g, sorted.partition_point(|&x| x <= g) as f64 / n))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketRow {
    pub protocol: Protocol,
    /// Lower boundary of the complexity bucket.
    pub bucket: usize,
    pub gamma: f64,
    pub count: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

/// Mean, spread and range of `Pr[c ≤ γ]` across rows sharing a protocol
/// and complexity bucket. A row falls in the largest boundary not above its
/// complexity; rows below every boundary are dropped. Empty buckets are
/// absent from the output.
pub fn bucket_stats(rows: &[ProtocolRows], boundaries: &[usize], gammas: &[f64]) -> Result<Vec<BucketRow>, McError> {
    let mut bounds = boundaries.to_vec();
    bounds.sort_unstable();
    bounds.dedup();
    let mut groups: BTreeMap<(Protocol, usize), Vec<EcdfRow>> = BTreeMap::new();
    for r in rows {
        let k = bounds.partition_point(|&b| b <= r.complexity);
        if k == 0 {
            continue;
        }
        groups
            .entry((r.protocol, bounds[k - 1]))
            .or_default()
            .push(ecdf(&r.ratios, gammas)?);
    }
    let mut out = Vec::new();
    for ((protocol, bucket), curves) in groups {
        for (gi, &gamma) in gammas.iter().enumerate() {
            let vals: Vec<f64> = curves.iter().map(|c| c[gi].1).collect();
            let n = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / n;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            out.push(BucketRow {
                protocol,
                bucket,
                gamma,
                count: vals.len(),
                mean,
                std: var.sqrt(),
                min: vals.iter().copied().fold(f64::INFINITY, f64::min),
                max: vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            });
        }
    }
    Ok(out)
}

/// Empirical `Pr[ratio < φ]` over `n` projections of random point pairs in
/// ℝ^d, where the ratio is projected over original distance. The segment
/// direction is uniform, drawn independently of the projection direction.
pub fn reduction_frequencies(d: usize, n: usize, seed: u64, phis: &[f64]) -> Result<Vec<f64>, McError> {
    let blocks = n.div_ceil(BLOCK * 16);
    let counts: Result<Vec<Vec<usize>>, McError> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(seed, Purpose::Test, d as u64, b as u64);
            let mut c = vec![0usize; phis.len()];
            for _ in 0..(BLOCK * 16).min(n - b * BLOCK * 16) {
                let seg = sample_unit_vector(d, &mut rng)?;
                let u = sample_unit_vector(d, &mut rng)?;
                let ratio = project_point(seg.as_point(), &u)?.abs();
                for (k, &phi) in phis.iter().enumerate() {
                    c[k] += usize::from(ratio < phi);
                }
            }
            Ok(c)
        })
        .collect();
    let mut total = vec![0usize; phis.len()];
    for c in counts? {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    Ok(total.into_iter().map(|c| c as f64 / n as f64).collect())
}
