//! Random directions and the laws governing how a projected distance shrinks.
//!
//! For a direction `u` drawn uniformly from the unit sphere in ℝ^d, the angle
//! `α` between `u` and a fixed vector has density `h_d(α)` on `[0, π]`, and a
//! segment of length `ℓ` projects to length `ℓ·|cos α|`. The closed forms
//! below are hardcoded for `d = 2..=5`.

use std::f64::consts::{FRAC_2_PI, PI, TAU};

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Curve, GeomError, Point};

const NORM_TOLERANCE: f64 = 1e-12;

fn check_sphere_dim(d: usize) -> Result<(), GeomError> {
    if (2..=5).contains(&d) {
        Ok(())
    } else {
        Err(GeomError::UnsupportedDimension(d))
    }
}

/// A direction on the unit sphere; it also stands for the line through the
/// origin that it spans.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Point", into = "Point")]
pub struct UnitVector(Point);

impl From<UnitVector> for Point {
    fn from(u: UnitVector) -> Point {
        u.0
    }
}

impl TryFrom<Point> for UnitVector {
    type Error = GeomError;

    fn try_from(p: Point) -> Result<Self, GeomError> {
        UnitVector::new(p)
    }
}

impl UnitVector {
    /// Accepts a vector whose norm is already within `1 ± 1e-12`.
    pub fn new(p: Point) -> Result<Self, GeomError> {
        check_sphere_dim(p.dim())?;
        let n = p.norm();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(GeomError::NotUnit(n));
        }
        Ok(Self(p))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalize(p: Point) -> Result<Self, GeomError> {
        check_sphere_dim(p.dim())?;
        let n = p.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(GeomError::NotUnit(n));
        }
        Self::new(p.scale(1.0 / n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_point(&self) -> &Point {
        &self.0
    }

    pub fn coords(&self) -> &[f64] {
        self.0.coords()
    }
}

/// Draws a direction uniformly from the unit sphere `S^{d-1}`.
///
/// The plane uses a uniform angle; higher dimensions normalize a standard
/// Gaussian vector, redrawing in the (probability zero) degenerate case.
pub fn sample_unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<UnitVector, GeomError> {
    check_sphere_dim(d)?;
    if d == 2 {
        let theta = rng.random::<f64>() * TAU;
        return Ok(UnitVector(Point::xy(theta.cos(), theta.sin())));
    }
    let mut buf = [0.0; 5];
    loop {
        for c in buf[..d].iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        let n2: f64 = buf[..d].iter().map(|c| c * c).sum();
        if n2 > 1e-200 {
            let n = n2.sqrt();
            for c in buf[..d].iter_mut() {
                *c /= n;
            }
            return UnitVector::new(Point::new(&buf[..d])?);
        }
    }
}

/// `⟨p, u⟩`.
pub fn project_point(p: &Point, u: &UnitVector) -> Result<f64, GeomError> {
    if p.dim() != u.dim() {
        return Err(GeomError::DimensionMismatch {
            left: p.dim(),
            right: u.dim(),
        });
    }
    Ok(p.dot(u.as_point()))
}

/// Projects every vertex onto the line spanned by `u`, giving a 1-dimensional
/// curve of the same complexity.
pub fn project_curve(c: &Curve, u: &UnitVector) -> Result<Curve, GeomError> {
    Ok(Curve::scalar(&project_scalars(c, u)?).expect("non-empty"))
}

/// Same as [`project_curve`] but returns the bare scalars.
pub fn project_scalars(c: &Curve, u: &UnitVector) -> Result<Vec<f64>, GeomError> {
    if c.dim() != u.dim() {
        return Err(GeomError::DimensionMismatch {
            left: c.dim(),
            right: u.dim(),
        });
    }
    Ok(c.vertices().iter().map(|p| p.dot(u.as_point())).collect())
}

/// Density of the angle between a uniform random direction and a fixed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnglePdf {
    dim: usize,
}

impl AnglePdf {
    pub fn new(dim: usize) -> Result<Self, GeomError> {
        check_sphere_dim(dim)?;
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `h_d(α)` for `α ∈ [0, π]`, zero outside.
    pub fn density(&self, alpha: f64) -> f64 {
        if !(0.0..=PI).contains(&alpha) {
            return 0.0;
        }
        let s = alpha.sin();
        match self.dim {
            2 => 1.0 / PI,
            3 => s / 2.0,
            4 => 2.0 * s * s / PI,
            5 => 0.75 * s * s * s,
            _ => unreachable!("dimension checked on construction"),
        }
    }

    /// `Pr[α ≤ alpha]`, obtained by integrating `h_d` in closed form.
    pub fn cdf(&self, alpha: f64) -> f64 {
        let a = alpha.clamp(0.0, PI);
        let c = a.cos();
        match self.dim {
            2 => a / PI,
            3 => (1.0 - c) / 2.0,
            4 => (a - a.sin() * c) / PI,
            // ∫ sin³ = -cos + cos³/3
            5 => 0.75 * ((2.0 / 3.0) - c + c * c * c / 3.0),
            _ => unreachable!("dimension checked on construction"),
        }
    }
}

fn check_phi(phi: f64) -> Result<(), GeomError> {
    if (0.0..=1.0).contains(&phi) {
        Ok(())
    } else {
        Err(GeomError::OutOfRange {
            name: "phi",
            value: phi,
        })
    }
}

/// Exact `Pr[‖q′−p′‖ / ‖q−p‖ < φ]` for a uniform random direction in ℝ^d.
pub fn reduction_cdf(d: usize, phi: f64) -> Result<f64, GeomError> {
    check_sphere_dim(d)?;
    check_phi(phi)?;
    let acos = phi.acos();
    let p = match d {
        2 => 1.0 - 2.0 * acos / PI,
        3 => phi,
        4 => 1.0 - FRAC_2_PI * (acos - phi * (1.0 - phi * phi).sqrt()),
        5 => 9.0 / 8.0 * phi - (3.0 * acos).cos() / 8.0,
        _ => unreachable!(),
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Linear upper bound on [`reduction_cdf`]: `φ` for d ∈ {2,3} and
/// `(1 + 2/π)·φ` for d ∈ {4,5}. Not clamped.
pub fn reduction_bound(d: usize, phi: f64) -> Result<f64, GeomError> {
    check_sphere_dim(d)?;
    check_phi(phi)?;
    Ok(phi * dimension_constant(d)?)
}

/// `1` for d ∈ {2,3}, `1 + 2/π` for d ∈ {4,5}.
pub fn dimension_constant(d: usize) -> Result<f64, GeomError> {
    check_sphere_dim(d)?;
    Ok(if d <= 3 { 1.0 } else { 1.0 + FRAC_2_PI })
}

/// The angle in `[0, π]` between `u` and a nonzero reference vector.
pub fn angle_to(u: &UnitVector, reference: &Point) -> f64 {
    let cos = u.as_point().dot(reference) / reference.norm();
    cos.clamp(-1.0, 1.0).acos()
}
