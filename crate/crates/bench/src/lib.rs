//! Fixtures shared by the benchmarks. The acceptance suite lives in
//! `tests/acceptance.rs` of this crate.

use projfrechet::generators::{gen_random_walk, gen_wedge, WedgeSpec};
use projfrechet::rng::{substream, Purpose};
use projfrechet::Curve;

/// Two independent unit-step walks of `t` vertices in ℝ^d.
pub fn walk_pair(t: usize, d: usize, seed: u64) -> (Curve, Curve) {
    let mut rng = substream(seed, Purpose::Generator, t as u64, d as u64);
    let p = gen_random_walk(t, d, 1.0, &mut rng).expect("valid walk parameters");
    let q = gen_random_walk(t, d, 1.0, &mut rng).expect("valid walk parameters");
    (p, q)
}

/// Wedge pair with `2t + 1` vertices per curve.
pub fn wedge_pair(t: usize, alpha: f64) -> (Curve, Curve) {
    let (p, q, _) = gen_wedge(WedgeSpec { t, alpha }).expect("valid wedge parameters");
    (p, q)
}
