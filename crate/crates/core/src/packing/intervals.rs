use serde::{Deserialize, Serialize};

use super::PackingError;

/// Sorted, pairwise disjoint closed intervals `[lo, hi]` of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    spans: Vec<(usize, usize)>,
}

impl IntervalSet {
    pub fn new(mut spans: Vec<(usize, usize)>) -> Result<Self, PackingError> {
        spans.sort_unstable();
        for (k, s) in spans.iter().enumerate() {
            if s.0 > s.1 {
                return Err(PackingError::InvalidIntervals(format!(
                    "[{}, {}] is reversed",
                    s.0, s.1
                )));
            }
            if k > 0 && spans[k - 1].1 >= s.0 {
                return Err(PackingError::InvalidIntervals(format!(
                    "[{}, {}] overlaps [{}, {}]",
                    spans[k - 1].0,
                    spans[k - 1].1,
                    s.0,
                    s.1
                )));
            }
        }
        Ok(Self { spans })
    }

    /// Maximal runs of consecutive indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut spans: Vec<(usize, usize)> = Vec::new();
        for j in idx {
            match spans.last_mut() {
                Some(last) if last.1 + 1 == j => last.1 = j,
                _ => spans.push((j, j)),
            }
        }
        Self { spans }
    }

    pub(crate) fn from_sorted_unchecked(spans: Vec<(usize, usize)>) -> Self {
        Self { spans }
    }

    pub fn spans(&self) -> &[(usize, usize)] {
        &self.spans
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Index of the interval containing `j`.
    pub fn find(&self, j: usize) -> Option<usize> {
        let k = self.spans.partition_point(|s| s.1 < j);
        (k < self.spans.len() && self.spans[k].0 <= j).then_some(k)
    }

    pub fn contains(&self, j: usize) -> bool {
        self.find(j).is_some()
    }

    /// All covered indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.spans.iter().flat_map(|&(a, b)| a..=b)
    }
}
