use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{check_dims, MetricsError};
use crate::geom::format::{content_lines, fmt_float, parse_floats, parse_header, FormatError};
use crate::Curve;

/// Row-major table of `δ(i, j) = ‖p_i − q_j‖`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn between(p: &Curve, q: &Curve) -> Result<Self, MetricsError> {
        check_dims(p, q)?;
        let mut data = Vec::with_capacity(p.len() * q.len());
        for a in p.vertices() {
            data.extend(q.vertices().iter().map(|b| a.distance(b)));
        }
        Ok(Self {
            rows: p.len(),
            cols: q.len(),
            data,
        })
    }

    /// Builds a synthetic matrix; entries must be finite and nonnegative.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MetricsError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(MetricsError::InvalidMatrix("matrix is empty".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(MetricsError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(MetricsError::InvalidMatrix(format!(
                    "entry ({i}, {j}) = {} is not a finite nonnegative number",
                    row[j]
                )));
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self, MetricsError> {
        Self::from_rows((0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// Text form: `rows cols` then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.rows, self.cols).unwrap();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| fmt_float(*v)).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, MetricsError> {
        let mut lines = content_lines(text);
        let (hno, header) = lines.next().ok_or_else(|| FormatError::new(1, "empty matrix file"))?;
        let (r, c) = parse_header(hno, header)?;
        if r == 0 || c == 0 {
            return Err(FormatError::new(hno, "matrix must be non-empty").into());
        }
        let mut rows = Vec::with_capacity(r);
        let mut last = hno;
        for (no, line) in lines {
            last = no;
            if rows.len() == r {
                return Err(FormatError::new(no, format!("more than the declared {r} rows")).into());
            }
            let row = parse_floats(no, line)?;
            if row.len() != c {
                return Err(FormatError::new(no, format!("expected {c} entries, found {}", row.len())).into());
            }
            if row.iter().any(|v| *v < 0.0) {
                return Err(FormatError::new(no, "distances must be nonnegative").into());
            }
            rows.push(row);
        }
        if rows.len() != r {
            return Err(FormatError::new(last, format!("declared {r} rows, found {}", rows.len())).into());
        }
        Self::from_rows(rows)
    }
}

pub fn distance_matrix(p: &Curve, q: &Curve) -> Result<DistanceMatrix, MetricsError> {
    DistanceMatrix::between(p, q)
}

/// `φ(i, j) = 1` iff `δ(i, j) < Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSpaceMatrix {
    threshold: f64,
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl FreeSpaceMatrix {
    pub fn from_matrix(d: &DistanceMatrix, threshold: f64) -> Result<Self, MetricsError> {
        if !(threshold > 0.0) {
            return Err(MetricsError::NonPositiveThreshold(threshold));
        }
        Ok(Self {
            threshold,
            rows: d.rows,
            cols: d.cols,
            bits: d.data.iter().map(|v| *v < threshold).collect(),
        })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_free(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    /// Rows rendered as `0`/`1` strings, top row first.
    pub fn render(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.is_free(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

pub fn free_space(p: &Curve, q: &Curve, threshold: f64) -> Result<FreeSpaceMatrix, MetricsError> {
    FreeSpaceMatrix::from_matrix(&DistanceMatrix::between(p, q)?, threshold)
}

/// Whether a monotone staircase of free cells joins the two corners.
pub fn traversal_exists(f: &FreeSpaceMatrix) -> bool {
    let mut prev = vec![false; f.cols];
    let mut cur = vec![false; f.cols];
    for i in 0..f.rows {
        for j in 0..f.cols {
            let reach = if i == 0 && j == 0 {
                true
            } else {
                (i > 0 && prev[j]) || (j > 0 && cur[j - 1]) || (i > 0 && j > 0 && prev[j - 1])
            };
            cur[j] = reach && f.is_free(i, j);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[f.cols - 1]
}
