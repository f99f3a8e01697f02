use serde::{Deserialize, Serialize};

use super::{range, GenError};
use crate::{Curve, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WedgeSpec {
    /// Each curve gets `2t + 1` vertices.
    pub t: usize,
    /// Angle at the shared start vertex, in `(0, π/2)`.
    pub alpha: f64,
}

/// Closed-form values for a wedge pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WedgeAnalytic {
    pub family: String,
    pub t: usize,
    pub alpha: f64,
    pub vertices: usize,
    pub dist_frechet: f64,
    pub dist_dtw: f64,
    /// Both curves are c-packed for some `c` below this.
    pub packedness_below: f64,
}

/// P runs straight from the origin to `(2 cos α, 0)`; Q goes out to the
/// apex `(cos α, sin α)` and back down to the same end point. Vertices are
/// spread uniformly, so the apex of Q faces the midpoint of P.
pub fn gen_wedge(spec: WedgeSpec) -> Result<(Curve, Curve, WedgeAnalytic), GenError> {
    let WedgeSpec { t, alpha } = spec;
    if t == 0 {
        return Err(range("t", 0.0, "t >= 1"));
    }
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
        return Err(range("alpha", alpha, "0 < alpha < pi/2"));
    }
    let origin = Point::xy(0.0, 0.0);
    let apex = Point::xy(alpha.cos(), alpha.sin());
    let end = Point::xy(2.0 * alpha.cos(), 0.0);
    let n = 2 * t + 1;
    let p: Vec<Point> = (0..n).map(|k| origin.lerp(&end, k as f64 / (2 * t) as f64)).collect();
    let mut q: Vec<Point> = (0..=t).map(|k| origin.lerp(&apex, k as f64 / t as f64)).collect();
    q.extend((1..=t).map(|k| apex.lerp(&end, k as f64 / t as f64)));
    let analytic = WedgeAnalytic {
        family: "wedge".into(),
        t,
        alpha,
        vertices: n,
        dist_frechet: alpha.sin(),
        dist_dtw: t as f64 * alpha.sin(),
        packedness_below: 3.0,
    };
    Ok((Curve::new(p)?, Curve::new(q)?, analytic))
}
