use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Cell, GuardingError, GuardingSet};
use crate::metrics::DistanceMatrix;

/// JSON companion to a member CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub theta: f64,
    pub delta: f64,
    pub size: usize,
    pub row_groups: Option<Vec<usize>>,
    pub col_groups: Option<Vec<usize>>,
}

impl Sidecar {
    pub fn new(b: &GuardingSet) -> Self {
        Self {
            theta: b.theta(),
            delta: b.delta(),
            size: b.len(),
            row_groups: None,
            col_groups: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    i: usize,
    j: usize,
    delta_ij: String,
}

/// Writes `i,j,delta_ij` with 1-based indices.
pub fn write_members_csv<W: Write>(w: W, d: &DistanceMatrix, b: &GuardingSet) -> Result<(), GuardingError> {
    let mut out = csv::Writer::from_writer(w);
    for &(i, j) in b.members() {
        out.serialize(Row {
            i: i + 1,
            j: j + 1,
            delta_ij: crate::geom::format::fmt_float(d.get(i, j)),
        })
        .map_err(|e| GuardingError::Io(e.to_string()))?;
    }
    out.flush().map_err(|e| GuardingError::Io(e.to_string()))
}

/// Reads the members back as 0-based cells.
pub fn read_members_csv<R: Read>(r: R) -> Result<Vec<Cell>, GuardingError> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for row in rdr.deserialize::<Row>() {
        let row = row.map_err(|e| GuardingError::Io(e.to_string()))?;
        if row.i == 0 || row.j == 0 {
            return Err(GuardingError::Io("indices are 1-based".into()));
        }
        out.push((row.i - 1, row.j - 1));
    }
    Ok(out)
}
