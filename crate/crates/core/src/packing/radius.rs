use serde::{Deserialize, Serialize};

use super::{segment_distance_range, IntervalSet, PackingError};
use crate::{Curve, Point};

/// Slack used when deciding whether a sphere touches an edge.
pub const TANGENCY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseRadius {
    pub r: f64,
    /// Edges of Q that intersect or touch the sphere `S(p, r)`.
    pub edge_count: usize,
}

/// Number of edges of `q` meeting the sphere of radius `r` around `p`.
pub fn sphere_edge_count(p: &Point, q: &Curve, r: f64) -> usize {
    q.edges()
        .filter(|(a, b)| {
            let (lo, hi, _) = segment_distance_range(a, b, p);
            lo <= r + TANGENCY_TOL && hi >= r - TANGENCY_TOL
        })
        .count()
}

/// Radius in `[b/2, b]` whose sphere around `p` meets few edges of `q`.
///
/// Event distances inside the annulus split `[b/2, b]` into gaps; the
/// midpoint of each gap is tried and the smallest count wins, preferring
/// the widest gap and then the earliest.
pub fn sparse_radius(p: &Point, q: &Curve, b: f64) -> Result<SparseRadius, PackingError> {
    if !(b > 0.0) {
        return Err(PackingError::NonPositiveRadius(b));
    }
    if p.dim() != q.dim() {
        return Err(PackingError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let (lo, hi) = (b / 2.0, b);
    let mut events = vec![lo, hi];
    events.extend(q.vertices().iter().map(|v| v.distance(p)));
    events.extend(q.edges().filter_map(|(a, c)| segment_distance_range(a, c, p).2));
    events.retain(|e| (lo..=hi).contains(e));
    events.sort_unstable_by(f64::total_cmp);
    events.dedup();

    let mut best: Option<(usize, f64, f64)> = None;
    for w in events.windows(2) {
        let width = w[1] - w[0];
        let mid = w[0] + width / 2.0;
        if !(width > 0.0 && mid > w[0] && mid < w[1]) {
            continue;
        }
        let count = sphere_edge_count(p, q, mid);
        let better = match best {
            None => true,
            Some((bc, bw, _)) => count < bc || (count == bc && width > bw),
        };
        if better {
            best = Some((count, width, mid));
        }
    }
    let (edge_count, _, r) = best.unwrap_or_else(|| (sphere_edge_count(p, q, lo), 0.0, lo));
    Ok(SparseRadius { r, edge_count })
}

/// Greedily merges consecutive intervals of `i_set` while every vertex in
/// the gap between them stays at distance at least `r` from `p`.
///
/// Every index covered by `i_set` must satisfy `d(p, q_j) ≥ b`.
pub fn merge_intervals(
    p: &Point,
    q: &Curve,
    i_set: &IntervalSet,
    b: f64,
) -> Result<(SparseRadius, IntervalSet), PackingError> {
    for j in i_set.indices() {
        if j >= q.len() {
            return Err(PackingError::InvalidIntervals(format!(
                "index {j} exceeds curve of {} vertices",
                q.len()
            )));
        }
        let distance = p.distance(q.vertex(j));
        if distance < b {
            return Err(PackingError::Precondition { index: j, distance, b });
        }
    }
    let sr = sparse_radius(p, q, b)?;
    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(i_set.len());
    for &(lo, hi) in i_set.spans() {
        match merged.last_mut() {
            Some(last) if (last.1 + 1..lo).all(|j| p.distance(q.vertex(j)) >= sr.r) => last.1 = hi,
            _ => merged.push((lo, hi)),
        }
    }
    Ok((sr, IntervalSet::from_sorted_unchecked(merged)))
}
