use rand::Rng;

use super::{range, GenError};
use crate::geom::sample_unit_vector;
use crate::{Curve, Point};

/// `t` vertices starting at the origin, each step a uniform unit direction
/// scaled by `step`.
pub fn gen_random_walk<R: Rng + ?Sized>(t: usize, d: usize, step: f64, rng: &mut R) -> Result<Curve, GenError> {
    if t == 0 {
        return Err(range("t", 0.0, "t >= 1"));
    }
    if !(2..=5).contains(&d) {
        return Err(range("d", d as f64, "2 <= d <= 5"));
    }
    if !(step >= 0.0 && step.is_finite()) {
        return Err(range("step", step, "step >= 0"));
    }
    let mut cur = Point::origin(d)?;
    let mut v = Vec::with_capacity(t);
    v.push(cur);
    for _ in 1..t {
        let u = sample_unit_vector(d, rng)?;
        cur = cur.add(&u.as_point().scale(step));
        v.push(cur);
    }
    Ok(Curve::new(v)?)
}
