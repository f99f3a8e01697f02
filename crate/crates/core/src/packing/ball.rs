use super::PackingError;
use crate::{Curve, Point};

/// Length of segment `ab` inside the closed ball `B(c, r)`.
///
/// Solves `‖a + s(b − a) − c‖² ≤ r²` for `s` and clips to `[0, 1]`.
pub fn segment_ball_length(a: &Point, b: &Point, c: &Point, r: f64) -> f64 {
    let v = b.sub(a);
    let len2 = v.dot(&v);
    if len2 == 0.0 {
        return 0.0;
    }
    // foot of the perpendicular from c, then half the chord around it
    let s_foot = c.sub(a).dot(&v) / len2;
    let h2 = a.lerp(b, s_foot).distance_squared(c);
    let half2 = r * r - h2;
    if half2 <= 0.0 {
        return 0.0;
    }
    let len = len2.sqrt();
    let half = half2.sqrt() / len;
    let s0 = (s_foot - half).max(0.0);
    let s1 = (s_foot + half).min(1.0);
    if s1 <= s0 {
        0.0
    } else {
        (s1 - s0) * len
    }
}

/// Total arc length of `p` inside `B(center, r)`.
pub fn ball_curve_length(p: &Curve, center: &Point, r: f64) -> Result<f64, PackingError> {
    if !(r > 0.0) {
        return Err(PackingError::NonPositiveRadius(r));
    }
    if p.dim() != center.dim() {
        return Err(PackingError::DimensionMismatch {
            left: p.dim(),
            right: center.dim(),
        });
    }
    Ok(p.edges().map(|(a, b)| segment_ball_length(a, b, center, r)).sum())
}

/// Nearest and farthest distance from `c` to segment `ab`, plus the
/// distance to the perpendicular foot when the foot is interior.
pub fn segment_distance_range(a: &Point, b: &Point, c: &Point) -> (f64, f64, Option<f64>) {
    let (da, db) = (a.distance(c), b.distance(c));
    let v = b.sub(a);
    let len2 = v.dot(&v);
    let far = da.max(db);
    if len2 == 0.0 {
        return (da, far, None);
    }
    let s = c.sub(a).dot(&v) / len2;
    if s > 0.0 && s < 1.0 {
        let foot = a.lerp(b, s).distance(c);
        (foot.min(da).min(db), far, Some(foot))
    } else {
        (da.min(db), far, None)
    }
}
