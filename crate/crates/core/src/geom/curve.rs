use super::{GeomError, Point};

/// A polygonal curve given by its ordered vertex sequence.
///
/// Curves are never empty and all vertices share one dimension. Repeated
/// consecutive vertices are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    vertices: Vec<Point>,
}

impl Curve {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let first = vertices.first().ok_or(GeomError::EmptyCurve)?;
        let dim = first.dim();
        if let Some(idx) = vertices.iter().position(|v| v.dim() != dim) {
            return Err(GeomError::MixedDimension {
                index: idx,
                expected: dim,
                found: vertices[idx].dim(),
            });
        }
        Ok(Self { vertices })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GeomError> {
        let pts = rows.iter().map(|r| Point::new(r)).collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    /// Builds a planar curve from `(x, y)` pairs.
    pub fn planar(xy: &[(f64, f64)]) -> Result<Self, GeomError> {
        Self::new(xy.iter().map(|&(x, y)| Point::xy(x, y)).collect())
    }

    /// Builds a 1-dimensional curve from scalars.
    pub fn scalar(values: &[f64]) -> Result<Self, GeomError> {
        Self::new(values.iter().map(|&x| Point::scalar(x)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Number of vertices (the complexity `t`).
    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn arc_length(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    /// The subcurve made of `len` consecutive vertices starting at `start`.
    pub fn window(&self, start: usize, len: usize) -> Result<Curve, GeomError> {
        if len == 0 || start + len > self.len() {
            return Err(GeomError::WindowOutOfRange {
                start,
                len,
                available: self.len(),
            });
        }
        Ok(Curve {
            vertices: self.vertices[start..start + len].to_vec(),
        })
    }

    pub fn prefix(&self, len: usize) -> Result<Curve, GeomError> {
        self.window(0, len)
    }

    /// Zero-pads every vertex into dimension `dim`.
    pub fn embed(&self, dim: usize) -> Result<Curve, GeomError> {
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.embed(dim))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Curve { vertices })
    }

    /// Scalar coordinates of a 1-dimensional curve.
    pub fn scalars(&self) -> Option<Vec<f64>> {
        (self.dim() == 1).then(|| self.vertices.iter().map(|p| p.coords()[0]).collect())
    }
}
