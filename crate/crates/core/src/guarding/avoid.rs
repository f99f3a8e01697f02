use std::collections::BTreeSet;

use super::{partition, Cell, GuardingSet, Partition};
use crate::metrics::DistanceMatrix;

/// Safe cells from which `target` can be reached through safe cells only.
fn safe_ancestors(part: &Partition, target: Cell) -> Vec<bool> {
    let (rows, cols) = (part.rows(), part.cols());
    let mut mark = vec![false; rows * cols];
    let mut stack = Vec::new();
    let preds = |(i, j): Cell| {
        [
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
        ]
        .into_iter()
        .flatten()
    };
    for c in preds(target) {
        if part.is_safe(c) && !mark[c.0 * cols + c.1] {
            mark[c.0 * cols + c.1] = true;
            stack.push(c);
        }
    }
    while let Some(c) = stack.pop() {
        for pc in preds(c) {
            if part.is_safe(pc) && !mark[pc.0 * cols + pc.1] {
                mark[pc.0 * cols + pc.1] = true;
                stack.push(pc);
            }
        }
    }
    mark
}

/// Members that two safe partial traversals to some other member can
/// bypass on both sides, within a row or within a column.
///
/// Every safe cell is reachable from the start through safe cells, so a
/// safe ancestor of a member lies on some safe partial traversal to it.
/// Two such ancestors in row `i` on either side of column `j` give the two
/// traversals.
pub fn find_avoidable(d: &DistanceMatrix, b: &GuardingSet) -> BTreeSet<Cell> {
    let part = partition(d, b);
    let (rows, cols) = (d.rows(), d.cols());
    let mut out = BTreeSet::new();
    for &target in b.members() {
        if target.0 >= rows || target.1 >= cols {
            continue;
        }
        let mark = safe_ancestors(&part, target);
        let mut row_span = vec![(usize::MAX, 0usize); rows];
        let mut col_span = vec![(usize::MAX, 0usize); cols];
        let mut any = false;
        for i in 0..=target.0 {
            for j in 0..=target.1 {
                if mark[i * cols + j] {
                    any = true;
                    row_span[i] = (row_span[i].0.min(j), row_span[i].1.max(j));
                    col_span[j] = (col_span[j].0.min(i), col_span[j].1.max(i));
                }
            }
        }
        if !any {
            continue;
        }
        for &(i, j) in b.members() {
            if (i, j) == target || out.contains(&(i, j)) || i >= rows || j >= cols {
                continue;
            }
            let (rl, rh) = row_span[i];
            let (cl, ch) = col_span[j];
            if (rl < j && j < rh && rl != usize::MAX) || (cl < i && i < ch && cl != usize::MAX) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Removes avoidable members until none remain.
pub fn remove_avoidable(d: &DistanceMatrix, mut b: GuardingSet) -> GuardingSet {
    loop {
        let found = find_avoidable(d, &b);
        if found.is_empty() {
            return b;
        }
        for c in found {
            b.remove(c);
        }
    }
}
