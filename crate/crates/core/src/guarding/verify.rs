use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{partition, Cell, GuardingError, GuardingSet};
use crate::geom::dimension_constant;
use crate::metrics::DistanceMatrix;
use crate::packing::IntervalSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    OutsideGrid {
        cell: Cell,
    },
    Distance {
        cell: Cell,
        value: f64,
        threshold: f64,
    },
    /// A traversal that misses every member.
    Escape {
        path: Vec<Cell>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuardingCheck {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl std::fmt::Display for GuardingCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.violation {
            None => write!(f, "valid"),
            Some(Violation::OutsideGrid { cell }) => write!(f, "member {cell:?} lies outside the grid"),
            Some(Violation::Distance { cell, value, threshold }) => {
                write!(f, "member {cell:?} has distance {value} < {threshold}")
            }
            Some(Violation::Escape { path }) => write!(f, "escape traversal of {} cells: {path:?}", path.len()),
        }
    }
}

/// Checks both clauses: every member is at distance at least `δ/θ`, and no
/// traversal avoids the set.
pub fn verify_guarding(d: &DistanceMatrix, b: &GuardingSet, theta: f64, delta: f64) -> GuardingCheck {
    let fail = |v| GuardingCheck {
        ok: false,
        violation: Some(v),
    };
    let (rows, cols) = (d.rows(), d.cols());
    let threshold = delta / theta;
    for &(i, j) in b.members() {
        if i >= rows || j >= cols {
            return fail(Violation::OutsideGrid { cell: (i, j) });
        }
        let value = d.get(i, j);
        if !(value >= threshold) {
            return fail(Violation::Distance {
                cell: (i, j),
                value,
                threshold,
            });
        }
    }
    if let Some(path) = escape_path(rows, cols, b) {
        return fail(Violation::Escape { path });
    }
    GuardingCheck {
        ok: true,
        violation: None,
    }
}

fn escape_path(rows: usize, cols: usize, b: &GuardingSet) -> Option<Vec<Cell>> {
    if b.contains((0, 0)) {
        return None;
    }
    let mut parent: Vec<Option<Cell>> = vec![None; rows * cols];
    let mut seen = vec![false; rows * cols];
    seen[0] = true;
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (rows - 1, cols - 1) {
            let mut path = vec![(i, j)];
            let mut cur = (i, j);
            while let Some(p) = parent[cur.0 * cols + cur.1] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for (a, c) in [(i + 1, j + 1), (i + 1, j), (i, j + 1)] {
            if a < rows && c < cols && !seen[a * cols + c] && !b.contains((a, c)) {
                seen[a * cols + c] = true;
                parent[a * cols + c] = Some((i, j));
                queue.push_back((a, c));
            }
        }
    }
    None
}

/// First member with no safe predecessor, if any. The set consisting of the
/// start cell alone is exempt.
pub fn check_predecessors(d: &DistanceMatrix, b: &GuardingSet) -> Option<Cell> {
    if b.len() == 1 && b.contains((0, 0)) {
        return None;
    }
    let part = partition(d, b);
    b.members().iter().copied().find(|&(i, j)| {
        let preds = [
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
        ];
        i >= d.rows() || j >= d.cols() || !preds.into_iter().flatten().any(|c| part.is_safe(c))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendedGroupReport {
    pub row_groups: Vec<usize>,
    pub col_groups: Vec<usize>,
    /// Maximal member runs per row.
    pub row_runs: Vec<IntervalSet>,
    /// Maximal member runs per column.
    pub col_runs: Vec<IntervalSet>,
}

impl ExtendedGroupReport {
    pub fn max_row(&self) -> usize {
        self.row_groups.iter().copied().max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.col_groups.iter().copied().max().unwrap_or(0)
    }
}

/// Runs lying inside one merged interval count once; other runs count
/// individually.
fn count_groups(runs: &IntervalSet, merged: &IntervalSet) -> usize {
    let mut keys = BTreeSet::new();
    for (k, &(lo, hi)) in runs.spans().iter().enumerate() {
        match merged.find(lo) {
            Some(m) if merged.spans()[m].1 >= hi => keys.insert((0, m)),
            _ => keys.insert((1, k)),
        };
    }
    keys.len()
}

/// Counts extended groups per row and column of `b`, given the merged
/// intervals recorded while trimming.
pub fn extended_groups(
    b: &GuardingSet,
    row_intervals: &[IntervalSet],
    col_intervals: &[IntervalSet],
) -> Result<ExtendedGroupReport, GuardingError> {
    let (rows, cols) = (row_intervals.len(), col_intervals.len());
    if let Some(&(i, j)) = b.members().iter().find(|&&(i, j)| i >= rows || j >= cols) {
        return Err(GuardingError::MissingStructure(format!(
            "member ({i}, {j}) has no recorded intervals ({rows} rows, {cols} columns)"
        )));
    }
    let row_runs: Vec<IntervalSet> = (0..rows).map(|i| IntervalSet::from_indices(b.row(i))).collect();
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for &(i, j) in b.members() {
        by_col[j].push(i);
    }
    let col_runs: Vec<IntervalSet> = by_col.into_iter().map(IntervalSet::from_indices).collect();
    Ok(ExtendedGroupReport {
        row_groups: row_runs
            .iter()
            .zip(row_intervals)
            .map(|(r, m)| count_groups(r, m))
            .collect(),
        col_groups: col_runs
            .iter()
            .zip(col_intervals)
            .map(|(r, m)| count_groups(r, m))
            .collect(),
        row_runs,
        col_runs,
    })
}

/// Distortion factor `(12c + 16) · t / γ`, times `1 + 2/π` for d = 4, 5.
pub fn theorem_bound(d: usize, c: f64, gamma: f64, t: usize) -> Result<f64, GuardingError> {
    if !(c >= 2.0 && c.is_finite()) {
        return Err(GuardingError::Parameter { name: "c", value: c });
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(GuardingError::Parameter {
            name: "gamma",
            value: gamma,
        });
    }
    if t == 0 {
        return Err(GuardingError::Parameter { name: "t", value: 0.0 });
    }
    let k = dimension_constant(d).map_err(|_| GuardingError::Parameter {
        name: "d",
        value: d as f64,
    })?;
    let t = t as f64;
    let value = (12.0 * c + 16.0) * t / gamma * k;
    // θ = 4 guarding set of at most (3c + 4) t members, β = 1/γ
    let via_factors = 4.0 * (3.0 * c + 4.0) * t / gamma * k;
    debug_assert!((value - via_factors).abs() <= 1e-9 * value);
    Ok(value)
}
