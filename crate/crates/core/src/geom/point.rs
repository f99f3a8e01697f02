use serde::{Deserialize, Serialize};

use super::GeomError;

/// Largest ambient dimension handled anywhere in the crate.
pub const MAX_DIM: usize = 5;

/// A point in ℝ^d for d in 1..=5, stored inline so it stays `Copy`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: u8,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self, GeomError> {
        let dim = coords.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        if let Some(bad) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite { index: bad });
        }
        let mut buf = [0.0; MAX_DIM];
        buf[..dim].copy_from_slice(coords);
        Ok(Self {
            coords: buf,
            dim: dim as u8,
        })
    }

    pub fn origin(dim: usize) -> Result<Self, GeomError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        Ok(Self {
            coords: [0.0; MAX_DIM],
            dim: dim as u8,
        })
    }

    /// Planar shorthand used heavily by the generators.
    pub fn xy(x: f64, y: f64) -> Self {
        Self {
            coords: [x, y, 0.0, 0.0, 0.0],
            dim: 2,
        }
    }

    pub fn scalar(x: f64) -> Self {
        Self {
            coords: [x, 0.0, 0.0, 0.0, 0.0],
            dim: 1,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn dot(&self, other: &Point) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    #[inline]
    pub fn distance_squared(&self, other: &Point) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// Euclidean distance. For 1-dimensional points this is exactly `|a - b|`.
    #[inline]
    pub fn distance(&self, other: &Point) -> f64 {
        if self.dim == 1 {
            return (self.coords[0] - other.coords[0]).abs();
        }
        self.distance_squared(other).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        let mut out = *self;
        for (o, b) in out.coords[..self.dim()].iter_mut().zip(other.coords()) {
            *o -= b;
        }
        out
    }

    pub fn add(&self, other: &Point) -> Point {
        let mut out = *self;
        for (o, b) in out.coords[..self.dim()].iter_mut().zip(other.coords()) {
            *o += b;
        }
        out
    }

    pub fn scale(&self, k: f64) -> Point {
        let mut out = *self;
        for o in out.coords[..self.dim()].iter_mut() {
            *o *= k;
        }
        out
    }

    /// `self + s * (to - self)`.
    pub fn lerp(&self, to: &Point, s: f64) -> Point {
        let mut out = *self;
        for (k, o) in out.coords[..self.dim()].iter_mut().enumerate() {
            *o += s * (to.coords[k] - self.coords[k]);
        }
        out
    }

    /// Zero-pads the point into a higher dimension.
    pub fn embed(&self, dim: usize) -> Result<Point, GeomError> {
        if dim < self.dim() || dim > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        let mut out = *self;
        out.dim = dim as u8;
        Ok(out)
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Point").field(&self.coords()).finish()
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords().to_vec()
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = GeomError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Point::new(&v)
    }
}
