use std::collections::VecDeque;

use super::{Cell, GuardingError, GuardingSet};
use crate::metrics::{discrete_frechet_matrix, DistanceMatrix};

/// Tolerance for comparing a caller-supplied δ with the matrix value.
const DELTA_TOL: f64 = 1e-12;

/// The BFS construction from the start cell.
///
/// Cells below `δ/θ` are expanded; the first cells at or above it that the
/// search touches become members. If the start cell is already at or above
/// the threshold it is the only member.
pub fn build_guarding(d: &DistanceMatrix, delta: f64, theta: f64) -> Result<GuardingSet, GuardingError> {
    if !(theta >= 1.0) {
        return Err(GuardingError::ThetaBelowOne(theta));
    }
    let computed = discrete_frechet_matrix(d).0;
    if !((computed - delta).abs() <= DELTA_TOL * delta.max(1.0)) {
        return Err(GuardingError::InconsistentDelta { given: delta, computed });
    }
    if delta == 0.0 {
        return Err(GuardingError::ZeroDistance);
    }
    let thr = delta / theta;
    if d.get(0, 0) >= thr {
        return Ok(GuardingSet::new([(0, 0)], theta, delta));
    }
    let (rows, cols) = (d.rows(), d.cols());
    let mut seen = vec![false; rows * cols];
    let mut members = Vec::new();
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        for (a, b) in [(i + 1, j), (i, j + 1), (i + 1, j + 1)] {
            if a >= rows || b >= cols || seen[a * cols + b] {
                continue;
            }
            seen[a * cols + b] = true;
            if d.get(a, b) >= thr {
                members.push((a, b));
            } else {
                queue.push_back((a, b));
            }
        }
    }
    Ok(GuardingSet::new(members, theta, delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellClass {
    /// Reachable from the start without touching a member.
    Safe,
    Member,
    /// Everything else.
    Hidden,
}

/// The three-way split of the grid induced by a guarding set.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    rows: usize,
    cols: usize,
    class: Vec<CellClass>,
}

impl Partition {
    pub fn compute(rows: usize, cols: usize, b: &GuardingSet) -> Self {
        let mut class = vec![CellClass::Hidden; rows * cols];
        for &(i, j) in b.members() {
            if i < rows && j < cols {
                class[i * cols + j] = CellClass::Member;
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                let k = i * cols + j;
                if class[k] == CellClass::Member {
                    continue;
                }
                let reach = (i == 0 && j == 0)
                    || (i > 0 && class[k - cols] == CellClass::Safe)
                    || (j > 0 && class[k - 1] == CellClass::Safe)
                    || (i > 0 && j > 0 && class[k - cols - 1] == CellClass::Safe);
                if reach {
                    class[k] = CellClass::Safe;
                }
            }
        }
        Self { rows, cols, class }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn class(&self, (i, j): Cell) -> CellClass {
        self.class[i * self.cols + j]
    }

    #[inline]
    pub fn is_safe(&self, c: Cell) -> bool {
        self.class(c) == CellClass::Safe
    }

    pub fn cells(&self, which: CellClass) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols;
        self.class
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == which)
            .map(move |(k, _)| (k / cols, k % cols))
    }

    pub fn count(&self, which: CellClass) -> usize {
        self.class.iter().filter(|c| **c == which).count()
    }

    /// Rows as strings of `s`, `b`, `h`, first row first.
    pub fn render(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.class((i, j)) {
                        CellClass::Safe => 's',
                        CellClass::Member => 'b',
                        CellClass::Hidden => 'h',
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn partition(d: &DistanceMatrix, b: &GuardingSet) -> Partition {
    Partition::compute(d.rows(), d.cols(), b)
}
