use super::{check_dims, DistanceMatrix, MetricsError, Traversal};
use crate::Curve;

#[derive(Clone, Copy)]
enum Combine {
    Max,
    Sum,
}

impl Combine {
    #[inline]
    fn apply(self, best_prev: f64, here: f64) -> f64 {
        match self {
            Combine::Max => best_prev.max(here),
            Combine::Sum => best_prev + here,
        }
    }
}

/// Full DP table over a matrix, kept for backtracking.
fn table(d: &DistanceMatrix, op: Combine) -> Vec<f64> {
    let (r, c) = (d.rows(), d.cols());
    let mut t = vec![0.0; r * c];
    for i in 0..r {
        for j in 0..c {
            let here = d.get(i, j);
            t[i * c + j] = if i == 0 && j == 0 {
                here
            } else {
                let mut best = f64::INFINITY;
                if i > 0 {
                    best = best.min(t[(i - 1) * c + j]);
                }
                if j > 0 {
                    best = best.min(t[i * c + j - 1]);
                }
                if i > 0 && j > 0 {
                    best = best.min(t[(i - 1) * c + j - 1]);
                }
                op.apply(best, here)
            };
        }
    }
    t
}

/// Walks back from the far corner, preferring the diagonal, then the cell
/// above `(i-1, j)`, then the cell to the left `(i, j-1)`.
fn backtrack(t: &[f64], rows: usize, cols: usize) -> Traversal {
    let at = |i: usize, j: usize| t[i * cols + j];
    let (mut i, mut j) = (rows - 1, cols - 1);
    let mut cells = vec![(i, j)];
    while (i, j) != (0, 0) {
        let mut best = (f64::INFINITY, (0, 0));
        let cands = [
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
        ];
        for (a, b) in cands.into_iter().flatten() {
            if at(a, b) < best.0 {
                best = (at(a, b), (a, b));
            }
        }
        (i, j) = best.1;
        cells.push((i, j));
    }
    cells.reverse();
    Traversal::new_unchecked(cells)
}

/// Min-max traversal value of a matrix with an optimal witness.
pub fn discrete_frechet_matrix(d: &DistanceMatrix) -> (f64, Traversal) {
    let t = table(d, Combine::Max);
    (t[t.len() - 1], backtrack(&t, d.rows(), d.cols()))
}

/// Min-sum traversal value of a matrix with an optimal witness.
pub fn dtw_matrix(d: &DistanceMatrix) -> (f64, Traversal) {
    let t = table(d, Combine::Sum);
    (t[t.len() - 1], backtrack(&t, d.rows(), d.cols()))
}

pub fn discrete_frechet(p: &Curve, q: &Curve) -> Result<(f64, Traversal), MetricsError> {
    Ok(discrete_frechet_matrix(&DistanceMatrix::between(p, q)?))
}

pub fn dtw(p: &Curve, q: &Curve) -> Result<(f64, Traversal), MetricsError> {
    Ok(dtw_matrix(&DistanceMatrix::between(p, q)?))
}

/// Rolling-row DP; `dist(i, j)` supplies δ lazily.
#[inline]
fn rolling(rows: usize, cols: usize, op: Combine, dist: impl Fn(usize, usize) -> f64) -> f64 {
    let mut prev = vec![0.0; cols];
    let mut cur = vec![0.0; cols];
    for i in 0..rows {
        for j in 0..cols {
            let here = dist(i, j);
            cur[j] = if i == 0 && j == 0 {
                here
            } else {
                let mut best = f64::INFINITY;
                if i > 0 {
                    best = best.min(prev[j]);
                }
                if j > 0 {
                    best = best.min(cur[j - 1]);
                }
                if i > 0 && j > 0 {
                    best = best.min(prev[j - 1]);
                }
                op.apply(best, here)
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[cols - 1]
}

/// Value only, `O(t_Q)` memory.
pub fn discrete_frechet_value(p: &Curve, q: &Curve) -> Result<f64, MetricsError> {
    check_dims(p, q)?;
    let (a, b) = (p.vertices(), q.vertices());
    Ok(rolling(a.len(), b.len(), Combine::Max, |i, j| a[i].distance(&b[j])))
}

pub fn dtw_value(p: &Curve, q: &Curve) -> Result<f64, MetricsError> {
    check_dims(p, q)?;
    let (a, b) = (p.vertices(), q.vertices());
    Ok(rolling(a.len(), b.len(), Combine::Sum, |i, j| a[i].distance(&b[j])))
}

/// Discrete Fréchet distance of two 1-dimensional curves given as scalars.
///
/// # Panics
/// If either slice is empty.
pub fn frechet_scalars(p: &[f64], q: &[f64]) -> f64 {
    assert!(!p.is_empty() && !q.is_empty(), "curves must be non-empty");
    rolling(p.len(), q.len(), Combine::Max, |i, j| (p[i] - q[j]).abs())
}

/// DTW of two 1-dimensional curves given as scalars.
///
/// # Panics
/// If either slice is empty.
pub fn dtw_scalars(p: &[f64], q: &[f64]) -> f64 {
    assert!(!p.is_empty() && !q.is_empty(), "curves must be non-empty");
    rolling(p.len(), q.len(), Combine::Sum, |i, j| (p[i] - q[j]).abs())
}
