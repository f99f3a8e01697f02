use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ball_curve_length, segment_ball_length, segment_distance_range, PackingError};
use crate::{Curve, Point};

pub const DEFAULT_RESOLUTION: usize = 4;

/// Best ball found by [`packedness_estimate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackednessReport {
    pub estimate: f64,
    pub center: Point,
    pub radius: f64,
    /// Curve length inside the witness ball.
    pub length: f64,
}

impl PackednessReport {
    /// Recomputes the witness ball and checks `length ≥ estimate · radius`.
    pub fn verify(&self, p: &Curve) -> bool {
        ball_curve_length(p, &self.center, self.radius).is_ok_and(|l| l >= self.estimate * self.radius - 1e-9)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Edge fractions `k/(m+1)` for `m ≤ resolution` in lowest terms, so the
/// family for `resolution + 1` contains the family for `resolution`.
fn fractions(resolution: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for m in 1..=resolution {
        for k in 1..=m {
            if gcd(k, m + 1) == 1 {
                out.push(k as f64 / (m + 1) as f64);
            }
        }
    }
    out
}

fn candidate_centers(p: &Curve, resolution: usize) -> Vec<Point> {
    let fr = fractions(resolution);
    let mut out: Vec<Point> = p.vertices().to_vec();
    for (a, b) in p.edges() {
        out.extend(fr.iter().map(|&s| a.lerp(b, s)));
    }
    out
}

/// Drops interior vertices that lie on the straight continuation of their
/// neighbours. Lengths inside any ball are unchanged.
fn merge_collinear(p: &Curve) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(p.len());
    for v in p.vertices() {
        if out.last() == Some(v) {
            continue;
        }
        if out.len() >= 2 {
            let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
            let (u, w) = (b.sub(&a), v.sub(&b));
            let (nu, nw) = (u.norm(), w.norm());
            let cos = u.dot(&w) / (nu * nw);
            if cos > 1.0 - 1e-15 {
                out.pop();
            }
        }
        out.push(*v);
    }
    out
}

fn chain_length(chain: &[Point], c: &Point, r: f64) -> f64 {
    chain.windows(2).map(|w| segment_ball_length(&w[0], &w[1], c, r)).sum()
}

/// Radii below this fraction of the arc length are rounding noise.
const MIN_RELATIVE_RADIUS: f64 = 1e-9;

fn event_radii(p: &Curve, c: &Point, min_r: f64) -> Vec<f64> {
    let mut radii: Vec<f64> = p.vertices().iter().map(|v| v.distance(c)).collect();
    radii.extend(p.edges().filter_map(|(a, b)| segment_distance_range(a, b, c).2));
    radii.retain(|r| *r > min_r);
    radii.sort_unstable_by(f64::total_cmp);
    radii.dedup();
    radii
}

/// Lower bound on the packedness constant of `p`.
///
/// Every vertex and a nested grid of points on each edge is tried as a
/// center, with every vertex distance and perpendicular-foot distance as a
/// radius.
pub fn packedness_estimate(p: &Curve, resolution: usize) -> Result<PackednessReport, PackingError> {
    if p.len() < 2 {
        return Err(PackingError::TooFewVertices(p.len()));
    }
    if resolution == 0 {
        return Err(PackingError::ZeroResolution);
    }
    let total = p.arc_length();
    let centers = candidate_centers(p, resolution);
    let chain = merge_collinear(p);
    let min_r = MIN_RELATIVE_RADIUS * total;
    let best = centers
        .par_iter()
        .enumerate()
        .filter_map(|(idx, c)| {
            let mut best: Option<(f64, f64, f64)> = None;
            for r in event_radii(p, c, min_r) {
                let floor = best.map_or(0.0, |b| b.0);
                if total / r <= floor {
                    break;
                }
                let len = chain_length(&chain, c, r);
                let ratio = len / r;
                if ratio > floor {
                    best = Some((ratio, r, len));
                }
            }
            best.map(|b| (b, idx))
        })
        .reduce_with(|x, y| {
            if y.0 .0 > x.0 .0 || (y.0 .0 == x.0 .0 && y.1 < x.1) {
                y
            } else {
                x
            }
        });
    match best {
        Some(((estimate, radius, length), idx)) => Ok(PackednessReport {
            estimate,
            center: centers[idx],
            radius,
            length,
        }),
        // every vertex coincides: the curve has no length anywhere
        None => Ok(PackednessReport {
            estimate: 0.0,
            center: *p.vertex(0),
            radius: 1.0,
            length: 0.0,
        }),
    }
}
