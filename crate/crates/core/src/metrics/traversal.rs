use serde::{Deserialize, Serialize};

use super::{DistanceMatrix, MetricsError};

/// A monotone sequence of grid cells from `(0, 0)` to `(rows-1, cols-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Traversal {
    cells: Vec<(usize, usize)>,
}

impl Traversal {
    /// Validates the corner and step rules for a `rows × cols` grid.
    pub fn new(cells: Vec<(usize, usize)>, rows: usize, cols: usize) -> Result<Self, MetricsError> {
        let bad = |m: String| Err(MetricsError::InvalidTraversal(m));
        match (cells.first(), cells.last()) {
            (Some(&(0, 0)), Some(&last)) if last == (rows - 1, cols - 1) => {}
            _ => return bad(format!("must run from (0, 0) to ({}, {})", rows - 1, cols - 1)),
        }
        for (k, w) in cells.windows(2).enumerate() {
            let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
            if di > 1 || dj > 1 || di + dj == 0 {
                return bad(format!("illegal step {:?} -> {:?} at position {k}", w[0], w[1]));
            }
        }
        Ok(Self { cells })
    }

    pub(crate) fn new_unchecked(cells: Vec<(usize, usize)>) -> Self {
        Self { cells }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest matched distance along the traversal.
    pub fn max_cost(&self, d: &DistanceMatrix) -> f64 {
        self.cells.iter().map(|&(i, j)| d.get(i, j)).fold(0.0, f64::max)
    }

    /// Sum of matched distances, accumulated from the start cell.
    pub fn sum_cost(&self, d: &DistanceMatrix) -> f64 {
        self.cells.iter().map(|&(i, j)| d.get(i, j)).fold(0.0, |a, v| a + v)
    }
}

/// The implicit grid graph whose edges step +1 in `i`, `j` or both.
#[derive(Clone, Copy, Debug)]
pub struct TraversalGraph<'a> {
    matrix: &'a DistanceMatrix,
}

impl<'a> TraversalGraph<'a> {
    pub fn new(matrix: &'a DistanceMatrix) -> Self {
        Self { matrix }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn weight(&self, (i, j): (usize, usize)) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn is_edge(&self, from: (usize, usize), to: (usize, usize)) -> bool {
        to.0 < self.rows()
            && to.1 < self.cols()
            && (to.0 == from.0 || to.0 == from.0 + 1)
            && (to.1 == from.1 || to.1 == from.1 + 1)
            && to != from
    }

    pub fn successors(&self, (i, j): (usize, usize)) -> impl Iterator<Item = (usize, usize)> {
        let (r, c) = (self.rows(), self.cols());
        [(i + 1, j), (i, j + 1), (i + 1, j + 1)]
            .into_iter()
            .filter(move |&(a, b)| a < r && b < c)
    }

    pub fn predecessors(&self, (i, j): (usize, usize)) -> impl Iterator<Item = (usize, usize)> {
        let cand = [
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
        ];
        cand.into_iter().flatten()
    }

    /// Whether `path` is a partial traversal: consecutive cells joined by edges.
    pub fn is_path(&self, path: &[(usize, usize)]) -> bool {
        path.windows(2).all(|w| self.is_edge(w[0], w[1]))
    }
}
