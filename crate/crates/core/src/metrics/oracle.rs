//! Exhaustive enumeration over every traversal. Exponential; test use only.

use super::{check_dims, DistanceMatrix, MetricsError};
use crate::Curve;

/// Largest `t_P + t_Q` accepted by the enumerators.
pub const BRUTEFORCE_LIMIT: usize = 16;

fn guard(p: &Curve, q: &Curve) -> Result<DistanceMatrix, MetricsError> {
    check_dims(p, q)?;
    let total = p.len() + q.len();
    if total > BRUTEFORCE_LIMIT {
        return Err(MetricsError::GuardExceeded {
            total,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    DistanceMatrix::between(p, q)
}

/// Calls `visit` once per traversal with the cost folded from the start
/// cell forward.
fn enumerate(d: &DistanceMatrix, fold: fn(f64, f64) -> f64, visit: &mut dyn FnMut(f64)) {
    fn go(d: &DistanceMatrix, i: usize, j: usize, acc: f64, fold: fn(f64, f64) -> f64, visit: &mut dyn FnMut(f64)) {
        let acc = fold(acc, d.get(i, j));
        if i + 1 == d.rows() && j + 1 == d.cols() {
            visit(acc);
            return;
        }
        if i + 1 < d.rows() {
            go(d, i + 1, j, acc, fold, visit);
        }
        if j + 1 < d.cols() {
            go(d, i, j + 1, acc, fold, visit);
        }
        if i + 1 < d.rows() && j + 1 < d.cols() {
            go(d, i + 1, j + 1, acc, fold, visit);
        }
    }
    go(d, 0, 0, 0.0, fold, visit);
}

fn minimum(d: &DistanceMatrix, fold: fn(f64, f64) -> f64) -> f64 {
    let mut best = f64::INFINITY;
    enumerate(d, fold, &mut |v| best = best.min(v));
    best
}

pub fn discrete_frechet_bruteforce(p: &Curve, q: &Curve) -> Result<f64, MetricsError> {
    Ok(minimum(&guard(p, q)?, f64::max))
}

pub fn dtw_bruteforce(p: &Curve, q: &Curve) -> Result<f64, MetricsError> {
    Ok(minimum(&guard(p, q)?, |a, b| a + b))
}

/// Number of traversals of a `rows × cols` grid (Delannoy number).
pub fn traversal_count(d: &DistanceMatrix) -> usize {
    let mut n = 0;
    enumerate(d, f64::max, &mut |_| n += 1);
    n
}
