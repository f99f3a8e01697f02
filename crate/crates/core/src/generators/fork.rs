use serde::{Deserialize, Serialize};

use super::{range, GenError};
use crate::metrics::DistanceMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForkSpec {
    pub t: usize,
    pub delta: f64,
    pub theta: f64,
}

/// Square matrix whose free space at `δ/θ` has the fork pattern.
///
/// With 1-based column `j`: columns `j ≡ 1 (mod 3)` are free except the last
/// row; columns `j ≡ 2` are blocked except the first row; columns `j ≡ 0`
/// are free in row 1 and blocked elsewhere. Free cells hold 0, blocked
/// cells hold `δ`.
pub fn gen_fork_matrix(spec: ForkSpec) -> Result<DistanceMatrix, GenError> {
    let ForkSpec { t, delta, theta } = spec;
    if t < 3 {
        return Err(range("t", t as f64, "t >= 3"));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(range("delta", delta, "delta > 0"));
    }
    if !(theta >= 1.0 && theta.is_finite()) {
        return Err(range("theta", theta, "theta >= 1"));
    }
    let free = |i: usize, j: usize| match j % 3 {
        1 => i != t,
        2 => i == 1,
        _ => i == 1,
    };
    Ok(DistanceMatrix::from_fn(t, t, |i, j| {
        if free(i + 1, j + 1) {
            0.0
        } else {
            delta
        }
    })?)
}
