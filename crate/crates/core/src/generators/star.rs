use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{range, GenError};
use crate::{Curve, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarSpec {
    /// Number of rays of P; even, at least 2.
    pub k: usize,
    /// Adds a vertex part-way along each ray on both sides of its tip.
    pub with_hats: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarAnalytic {
    pub family: String,
    pub k: usize,
    pub with_hats: bool,
    /// Common complexity after padding.
    pub t: usize,
    /// Continuous Fréchet distance between the two stars.
    pub continuous_frechet: f64,
    /// Lower bound on `dist(P, Q) / dist(P', Q')` for every direction.
    pub lower_bound_factor: f64,
    pub hat_radius: f64,
}

/// Star with `k` unit rays at angles `2π(i−1)/k`, walked through the
/// origin and closed at the first tip.
fn star(k: usize, hat: Option<f64>) -> Vec<Point> {
    let tip = |i: usize, r: f64| {
        let a = 2.0 * PI * (i as f64) / k as f64;
        Point::xy(r * a.cos(), r * a.sin())
    };
    let center = Point::xy(0.0, 0.0);
    let mut v = Vec::new();
    match hat {
        None => {
            for i in 0..k {
                v.push(tip(i, 1.0));
                v.push(center);
            }
            v.push(tip(0, 1.0));
        }
        Some(h) => {
            v.push(tip(0, 1.0));
            v.push(tip(0, h));
            v.push(center);
            for i in 1..k {
                v.extend([tip(i, h), tip(i, 1.0), tip(i, h), center]);
            }
            v.push(tip(0, h));
            v.push(tip(0, 1.0));
        }
    }
    v
}

/// P is the `k`-ray star, Q the `(k+1)`-ray star; P is padded with copies
/// of its first tip so both curves have the same complexity.
pub fn gen_star(spec: StarSpec) -> Result<(Curve, Curve, StarAnalytic), GenError> {
    let k = spec.k;
    if k < 2 || k % 2 == 1 {
        return Err(range("k", k as f64, "even k >= 2"));
    }
    let dist = 1.0 / (2.0 * (PI / (k + 1) as f64).cos());
    let hat = spec.with_hats.then_some(dist);
    let mut p = star(k, hat);
    let q = star(k + 1, hat);
    let first = p[0];
    p.resize(q.len(), first);
    let t = q.len();
    let factor = if spec.with_hats {
        (t as f64 - 5.0) / (16.0 * PI)
    } else {
        (t as f64 - 3.0) / (8.0 * PI)
    };
    let analytic = StarAnalytic {
        family: "star".into(),
        k,
        with_hats: spec.with_hats,
        t,
        continuous_frechet: dist,
        lower_bound_factor: factor,
        hat_radius: hat.unwrap_or(f64::NAN),
    };
    Ok((Curve::new(p)?, Curve::new(q)?, analytic))
}
