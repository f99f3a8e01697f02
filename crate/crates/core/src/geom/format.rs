//! Plain-text curve files.
//!
//! ```text
//! # optional comments
//! d t
//! x_1 ... x_d
//! ...            (t lines)
//! ```
//!
//! Files that start with a non-numeric header whose first two columns are
//! `x y` (the layout of the 2017 SIGSPATIAL trajectory corpus) are read as
//! planar curves from the first two columns of each data row.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use super::{Curve, GeomError, Point};

/// A parse failure with its 1-based line number.
#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_floats(line_no: usize, line: &str) -> Result<Vec<f64>, FormatError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| FormatError::new(line_no, format!("not a finite number: {tok:?}")))
        })
        .collect()
}

pub(crate) fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize), FormatError> {
    let toks: Vec<_> = line.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(FormatError::new(line_no, "header must hold two integers"));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| FormatError::new(line_no, format!("not an integer: {s:?}")))
    };
    Ok((parse(toks[0])?, parse(toks[1])?))
}

pub fn parse_curve(text: &str) -> Result<Curve, FormatError> {
    let mut lines = content_lines(text).peekable();
    let Some(&(first_no, first)) = lines.peek() else {
        return Err(FormatError::new(1, "empty curve file"));
    };
    if is_trajectory_header(first) {
        lines.next();
        return parse_trajectory_rows(first_no, lines);
    }
    lines.next();
    let (d, t) = parse_header(first_no, first)?;
    if !(1..=super::MAX_DIM).contains(&d) {
        return Err(FormatError::new(first_no, format!("unsupported dimension {d}")));
    }
    if t == 0 {
        return Err(FormatError::new(first_no, "curve must have at least one vertex"));
    }
    let mut pts = Vec::with_capacity(t);
    let mut last_line = first_no;
    for (no, line) in lines {
        last_line = no;
        if pts.len() == t {
            return Err(FormatError::new(no, format!("more than the declared {t} vertices")));
        }
        let row = parse_floats(no, line)?;
        if row.len() != d {
            return Err(FormatError::new(
                no,
                format!("expected {d} coordinates, found {}", row.len()),
            ));
        }
        pts.push(Point::new(&row).map_err(|e| FormatError::new(no, e.to_string()))?);
    }
    if pts.len() != t {
        return Err(FormatError::new(
            last_line,
            format!("declared {t} vertices, found {}", pts.len()),
        ));
    }
    Curve::new(pts).map_err(|e| FormatError::new(first_no, e.to_string()))
}

fn is_trajectory_header(line: &str) -> bool {
    let mut toks = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty());
    matches!(
        (toks.next(), toks.next()),
        (Some(a), Some(b)) if a.eq_ignore_ascii_case("x") && b.eq_ignore_ascii_case("y")
    )
}

fn parse_trajectory_rows<'a>(
    header_line: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Curve, FormatError> {
    let mut pts = Vec::new();
    for (no, line) in lines {
        let cols: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if cols.len() < 2 {
            return Err(FormatError::new(no, "expected at least x and y columns"));
        }
        let xy = parse_floats(no, &format!("{} {}", cols[0], cols[1]))?;
        pts.push(Point::xy(xy[0], xy[1]));
    }
    Curve::new(pts).map_err(|_| FormatError::new(header_line, "trajectory file has no rows"))
}

/// Canonical text form; floats use 17 significant digits.
pub fn format_curve(c: &Curve) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", c.dim(), c.len()).unwrap();
    for p in c.vertices() {
        let row: Vec<String> = p.coords().iter().map(|v| fmt_float(*v)).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// 17 significant digits in scientific notation; round-trips exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn read_curve(path: &Path) -> Result<Curve, GeomError> {
    let text = std::fs::read_to_string(path).map_err(|e| GeomError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_curve(&text).map_err(|e| GeomError::Parse {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn write_curve(path: &Path, c: &Curve) -> Result<(), GeomError> {
    std::fs::write(path, format_curve(c)).map_err(|e| GeomError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn read_curve_from<R: BufRead>(mut reader: R) -> Result<Curve, FormatError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| FormatError::new(0, e.to_string()))?;
    parse_curve(&text)
}

pub fn write_curve_to<W: Write>(mut w: W, c: &Curve) -> std::io::Result<()> {
    w.write_all(format_curve(c).as_bytes())
}
