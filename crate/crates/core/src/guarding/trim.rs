use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{
    build_guarding, check_predecessors, find_avoidable, partition, remove_avoidable, Cell, GuardingError, GuardingSet,
};
use crate::metrics::{discrete_frechet_matrix, DistanceMatrix};
use crate::packing::{merge_intervals, IntervalSet};
use crate::Curve;

/// Curves and their distance matrix, rows indexing `p`.
#[derive(Clone, Copy, Debug)]
pub struct TrimContext<'a> {
    pub p: &'a Curve,
    pub q: &'a Curve,
    pub d: &'a DistanceMatrix,
}

/// Fills row `i` over `j_set` and cuts away the members behind the fill.
///
/// The filling cells are the safe cells of row `i` covered by `j_set` but
/// not already members. A BFS from them through non-member cells in rows
/// below `i` removes every member it touches; then the filling cells join
/// the set, and a member directly right of a filling cell is dropped when
/// it has no safe predecessor left. Returns the filling cells.
pub fn trim_row_with(
    d: &DistanceMatrix,
    b: &mut GuardingSet,
    i: usize,
    j_set: &IntervalSet,
) -> Result<Vec<Cell>, GuardingError> {
    let (rows, cols) = (d.rows(), d.cols());
    if i >= rows {
        return Err(GuardingError::OutOfRange { index: i, len: rows });
    }
    let part = partition(d, b);
    let fill: Vec<Cell> = j_set
        .indices()
        .filter(|&j| j < cols)
        .map(|j| (i, j))
        .filter(|&c| !b.contains(c) && part.is_safe(c))
        .collect();
    let original = b.clone();
    let mut seen = vec![false; rows * cols];
    let mut queue: VecDeque<Cell> = fill.iter().copied().collect();
    for &(a, c) in &fill {
        seen[a * cols + c] = true;
    }
    while let Some((a, c)) = queue.pop_front() {
        for (x, y) in [(a + 1, c), (a, c + 1), (a + 1, c + 1)] {
            if x <= i || x >= rows || y >= cols || seen[x * cols + y] {
                continue;
            }
            seen[x * cols + y] = true;
            if original.contains((x, y)) {
                b.remove((x, y));
            } else {
                queue.push_back((x, y));
            }
        }
    }
    for &c in &fill {
        b.insert(c);
    }
    // a member right of a filling cell may have lost its only safe predecessor
    let part = partition(d, b);
    for &(a, c) in &fill {
        let right = (a, c + 1);
        if c + 1 < cols && b.contains(right) && !has_safe_predecessor(&part, right) {
            b.remove(right);
        }
    }
    Ok(fill)
}

fn has_safe_predecessor(part: &super::Partition, (i, j): Cell) -> bool {
    let mut preds = Vec::with_capacity(3);
    if i > 0 {
        preds.push((i - 1, j));
    }
    if j > 0 {
        preds.push((i, j - 1));
    }
    if i > 0 && j > 0 {
        preds.push((i - 1, j - 1));
    }
    preds.into_iter().any(|c| part.is_safe(c))
}

/// Trims row `i`, taking the merged intervals from the interval-merging
/// subroutine with parameter `bound`. Returns the merged intervals.
pub fn trim_row(ctx: TrimContext<'_>, b: &mut GuardingSet, i: usize, bound: f64) -> Result<IntervalSet, GuardingError> {
    if i >= ctx.p.len() {
        return Err(GuardingError::OutOfRange {
            index: i,
            len: ctx.p.len(),
        });
    }
    let i_set = IntervalSet::from_indices(b.row(i));
    if i_set.is_empty() {
        return Ok(i_set);
    }
    let (_, j_set) = merge_intervals(ctx.p.vertex(i), ctx.q, &i_set, bound)?;
    trim_row_with(ctx.d, b, i, &j_set)?;
    Ok(j_set)
}

/// Result of the three-phase pipeline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrimOutcome {
    pub set: GuardingSet,
    pub delta: f64,
    /// Merged intervals used for each row (indices into Q).
    pub row_intervals: Vec<IntervalSet>,
    /// Merged intervals used for each column (indices into P).
    pub col_intervals: Vec<IntervalSet>,
    /// Sizes after the BFS construction, avoidable removal, rows, columns.
    pub phase_sizes: [usize; 4],
    /// Whether the predecessor invariant held after each of those phases.
    pub predecessors_ok: [bool; 4],
    /// Avoidable members found after column trimming; reported, not removed.
    pub residual_avoidable: Vec<Cell>,
    /// `(3c + 4) · max(t_P, t_Q)` when a packedness hint was given.
    pub size_bound: Option<f64>,
}

impl TrimOutcome {
    pub fn within_size_bound(&self) -> Option<bool> {
        self.size_bound.map(|s| self.set.len() as f64 <= s)
    }
}

/// Builds a 1-guarding set, removes avoidable members, trims every row with
/// `b = δ` and every column with `b = δ/2`. The result is a 4-guarding set.
pub fn trim_full(p: &Curve, q: &Curve, c_hint: Option<f64>) -> Result<TrimOutcome, GuardingError> {
    let d = DistanceMatrix::between(p, q)?;
    let delta = discrete_frechet_matrix(&d).0;
    if delta == 0.0 {
        return Err(GuardingError::ZeroDistance);
    }
    let mut sizes = [0; 4];
    let mut preds = [false; 4];

    let b = build_guarding(&d, delta, 1.0)?;
    sizes[0] = b.len();
    preds[0] = check_predecessors(&d, &b).is_none();

    let mut b = remove_avoidable(&d, b);
    sizes[1] = b.len();
    preds[1] = check_predecessors(&d, &b).is_none();

    let ctx = TrimContext { p, q, d: &d };
    let mut row_intervals = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        row_intervals.push(trim_row(ctx, &mut b, i, delta)?);
    }
    let b = b.with_theta(2.0);
    sizes[2] = b.len();
    preds[2] = check_predecessors(&d, &b).is_none();

    let dt = d.transpose();
    let mut bt = b.transpose();
    let ctx_t = TrimContext { p: q, q: p, d: &dt };
    let mut col_intervals = Vec::with_capacity(q.len());
    for j in 0..q.len() {
        col_intervals.push(trim_row(ctx_t, &mut bt, j, delta / 2.0)?);
    }
    let b = bt.transpose().with_theta(4.0);
    sizes[3] = b.len();
    preds[3] = check_predecessors(&d, &b).is_none();

    let residual_avoidable = find_avoidable(&d, &b).into_iter().collect();
    let size_bound = c_hint.map(|c| (3.0 * c + 4.0) * p.len().max(q.len()) as f64);
    Ok(TrimOutcome {
        set: b,
        delta,
        row_intervals,
        col_intervals,
        phase_sizes: sizes,
        predecessors_ok: preds,
        residual_avoidable,
        size_bound,
    })
}
