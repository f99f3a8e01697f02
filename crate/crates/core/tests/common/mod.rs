//! Seeded invariant checks shared by the property tests and the acceptance
//! suite. Every check takes a seed and returns a description of the first
//! failure it finds.

#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::fmt::Display;

use rand::Rng;

use projfrechet::generators::{gen_fork_matrix, gen_random_walk, gen_star, gen_wedge, ForkSpec, StarSpec, WedgeSpec};
use projfrechet::geom::{project_scalars, reduction_bound, reduction_cdf, sample_unit_vector, AnglePdf};
use projfrechet::guarding::{
    build_guarding, check_predecessors, extended_groups, find_avoidable, remove_avoidable, theorem_bound, trim_full,
    trim_row_with, verify_guarding, Cell,
};
use projfrechet::metrics::{
    discrete_frechet, discrete_frechet_bruteforce, dtw, dtw_bruteforce, dtw_scalars, frechet_scalars, free_space,
    traversal_exists, DistanceMatrix,
};
use projfrechet::montecarlo::{
    bucket_stats, directions, ecdf, reduction_frequencies, run_corpus, run_pair_with, write_bucket_csv, write_ecdf_csv,
    write_raw_csv, CorpusPair,
};
use projfrechet::packing::{ball_curve_length, merge_intervals, packedness_estimate, sparse_radius, IntervalSet};
use projfrechet::rng::{substream, Purpose, Rng as StreamRng};
use projfrechet::{Curve, DistanceKind, ExperimentConfig, GuardingSet, Point};

/// The fixed seed matrix.
pub const SEEDS: [u64; 5] = [1, 7, 42, 2024, 0x5eed];

pub type Check = fn(u64) -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn stream(seed: u64, tag: u64) -> StreamRng {
    substream(seed, Purpose::Test, tag, 0)
}

/// `t` vertices with coordinates uniform in `[-1, 1]`.
pub fn random_curve(rng: &mut impl Rng, t: usize, d: usize) -> Curve {
    let rows: Vec<Vec<f64>> = (0..t)
        .map(|_| (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    Curve::from_rows(&rows).expect("valid random curve")
}

pub fn random_pair(rng: &mut impl Rng, max_t: usize, d: usize) -> (Curve, Curve) {
    let tp = rng.random_range(1..=max_t);
    let tq = rng.random_range(1..=max_t);
    (random_curve(rng, tp, d), random_curve(rng, tq, d))
}

/// Every monotone staircase from `(0, 0)` to the far corner.
pub fn all_traversals(rows: usize, cols: usize) -> Vec<Vec<Cell>> {
    fn go(c: Cell, rows: usize, cols: usize, path: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        path.push(c);
        if c == (rows - 1, cols - 1) {
            out.push(path.clone());
        } else {
            for n in [(c.0 + 1, c.1), (c.0, c.1 + 1), (c.0 + 1, c.1 + 1)] {
                if n.0 < rows && n.1 < cols {
                    go(n, rows, cols, path, out);
                }
            }
        }
        path.pop();
    }
    let mut out = Vec::new();
    go((0, 0), rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Cells reachable from the start without entering `b`.
pub fn safe_cells(rows: usize, cols: usize, b: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let mut seen = BTreeSet::new();
    if b.contains(&(0, 0)) {
        return seen;
    }
    let mut queue = VecDeque::from([(0, 0)]);
    seen.insert((0, 0));
    while let Some((i, j)) = queue.pop_front() {
        for n in [(i + 1, j), (i, j + 1), (i + 1, j + 1)] {
            if n.0 < rows && n.1 < cols && !b.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Avoidable members by explicit enumeration of partial traversals that
/// stay in the safe region until they reach another member.
pub fn avoidable_by_paths(rows: usize, cols: usize, b: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let safe = safe_cells(rows, cols, b);
    let mut out = BTreeSet::new();
    for &target in b {
        // cells of row i (resp. column j) visited by some valid path
        let mut by_row: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
        let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
        let mut path = Vec::new();
        enumerate_into(target, (0, 0), &safe, &mut path, &mut |p: &[Cell]| {
            for &(i, j) in p {
                by_row[i].insert(j);
                by_col[j].insert(i);
            }
        });
        for &(i, j) in b {
            let row_split = by_row[i].iter().any(|&y| y < j) && by_row[i].iter().any(|&y| y > j);
            let col_split = by_col[j].iter().any(|&x| x < i) && by_col[j].iter().any(|&x| x > i);
            if row_split || col_split {
                out.insert((i, j));
            }
        }
    }
    out
}

fn enumerate_into(target: Cell, c: Cell, safe: &BTreeSet<Cell>, path: &mut Vec<Cell>, visit: &mut impl FnMut(&[Cell])) {
    if !safe.contains(&c) {
        return;
    }
    path.push(c);
    for n in [(c.0 + 1, c.1), (c.0, c.1 + 1), (c.0 + 1, c.1 + 1)] {
        if n == target {
            visit(path);
        } else if n.0 <= target.0 && n.1 <= target.1 {
            enumerate_into(target, n, safe, path, visit);
        }
    }
    path.pop();
}

/// `|C ∩ B(c, r)|` by dense sampling of each edge.
pub fn sampled_ball_length(p: &Curve, c: &Point, r: f64, per_edge: usize) -> f64 {
    p.edges()
        .map(|(a, b)| {
            let len = a.distance(b);
            let inside = (0..per_edge)
                .filter(|&k| a.lerp(b, (k as f64 + 0.5) / per_edge as f64).distance(c) <= r)
                .count();
            len * inside as f64 / per_edge as f64
        })
        .sum()
}

/// Edges of `q` meeting the sphere `|x − p| = r`, with closed forms written
/// out independently of the library.
pub fn sphere_hits(p: &Point, q: &Curve, r: f64, tol: f64) -> usize {
    q.edges()
        .filter(|(a, b)| {
            let v = b.sub(a);
            let w = p.sub(a);
            let vv = v.dot(&v);
            let s = if vv == 0.0 {
                0.0
            } else {
                (w.dot(&v) / vv).clamp(0.0, 1.0)
            };
            let near = a.lerp(b, s).distance(p);
            let far = a.distance(p).max(b.distance(p));
            near <= r + tol && far >= r - tol
        })
        .count()
}

pub fn is_monotone(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

// ---- geom ----

pub fn unit_norms(seed: u64) -> Result<(), String> {
    for d in 2..=5 {
        let mut rng = stream(seed, d as u64);
        for _ in 0..5000 {
            let u = ok(sample_unit_vector(d, &mut rng))?;
            let n = u.as_point().norm();
            ensure!((n - 1.0).abs() <= 1e-12, "d={d}: norm {n}");
        }
    }
    Ok(())
}

pub fn projection_contracts(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 10);
    for k in 0..60 {
        let d = 2 + k % 4;
        let (p, q) = random_pair(&mut rng, 8, d);
        let u = ok(sample_unit_vector(d, &mut rng))?;
        let (a, b) = (ok(project_scalars(&p, &u))?, ok(project_scalars(&q, &u))?);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let full = p.vertex(i).distance(q.vertex(j));
                ensure!(
                    (x - y).abs() <= full + 1e-12,
                    "pair {k}: projected {} > {full}",
                    (x - y).abs()
                );
            }
        }
    }
    Ok(())
}

pub fn reduction_cdf_shape(_seed: u64) -> Result<(), String> {
    for d in 2..=5 {
        ensure!(ok(reduction_cdf(d, 0.0))?.abs() < 1e-15, "d={d}: F(0) != 0");
        ensure!((ok(reduction_cdf(d, 1.0))? - 1.0).abs() < 1e-15, "d={d}: F(1) != 1");
        let grid: Vec<f64> = (0..=1000)
            .map(|k| ok(reduction_cdf(d, k as f64 / 1000.0)))
            .collect::<Result<_, _>>()?;
        ensure!(is_monotone(&grid), "d={d}: not monotone");
        ensure!(grid.windows(2).all(|w| w[1] - w[0] < 0.05), "d={d}: jump in the CDF");
        for k in 1..=99 {
            let phi = k as f64 / 100.0;
            let bound = ok(reduction_bound(d, phi))?.min(1.0);
            ensure!(
                ok(reduction_cdf(d, phi))? <= bound + 1e-15,
                "d={d}, phi={phi}: above bound"
            );
        }
    }
    Ok(())
}

pub fn angle_density_integrates(_seed: u64) -> Result<(), String> {
    for d in 2..=5 {
        let pdf = ok(AnglePdf::new(d))?;
        let n = 20_000;
        let h = PI / n as f64;
        let mut s = pdf.density(0.0) + pdf.density(PI);
        for k in 1..n {
            s += pdf.density(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let total = s * h / 3.0;
        ensure!((total - 1.0).abs() < 1e-6, "d={d}: integral {total}");
    }
    Ok(())
}

/// Kolmogorov–Smirnov distance of the angle to a fixed axis in ℝ³ against
/// `(1 − cos α) / 2`.
pub fn angle_ks_d3(seed: u64, n: usize) -> Result<f64, String> {
    let mut rng = stream(seed, 20);
    let mut angles: Vec<f64> = (0..n)
        .map(|_| sample_unit_vector(3, &mut rng).map(|u| u.coords()[0].clamp(-1.0, 1.0).acos()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    angles.sort_unstable_by(f64::total_cmp);
    let nf = n as f64;
    Ok(angles
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let f = (1.0 - a.cos()) / 2.0;
            (f - i as f64 / nf).abs().max((f - (i + 1) as f64 / nf).abs())
        })
        .fold(0.0, f64::max))
}

pub fn angle_distribution(seed: u64) -> Result<(), String> {
    let ks = angle_ks_d3(seed, 1_000_000)?;
    ensure!(ks <= 0.005, "KS distance {ks}");
    Ok(())
}

/// Largest deviation from the closed form and largest excess over the
/// linear bound, over `φ ∈ {0.1, ..., 0.9}`.
pub fn reduction_gaps(d: usize, n: usize, seed: u64) -> Result<(f64, f64), String> {
    let phis: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let freq = ok(reduction_frequencies(d, n, seed, &phis))?;
    let mut dev: f64 = 0.0;
    let mut excess: f64 = f64::NEG_INFINITY;
    for (phi, f) in phis.iter().zip(freq) {
        dev = dev.max((f - ok(reduction_cdf(d, *phi))?).abs());
        excess = excess.max(f - ok(reduction_bound(d, *phi))?);
    }
    Ok((dev, excess))
}

pub fn reduction_frequencies_match(seed: u64) -> Result<(), String> {
    for d in 2..=5 {
        let (dev, excess) = reduction_gaps(d, 200_000, seed)?;
        ensure!(dev <= 0.005, "d={d}: deviation {dev}");
        ensure!(excess <= 0.005, "d={d}: bound exceeded by {excess}");
    }
    Ok(())
}

// ---- metrics ----

pub fn projection_monotone(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 30);
    for k in 0..40 {
        let d = 2 + k % 4;
        let (p, q) = random_pair(&mut rng, 20, d);
        let fr = ok(discrete_frechet(&p, &q))?.0;
        let tw = ok(dtw(&p, &q))?.0;
        for _ in 0..25 {
            let u = ok(sample_unit_vector(d, &mut rng))?;
            let (a, b) = (ok(project_scalars(&p, &u))?, ok(project_scalars(&q, &u))?);
            let pf = frechet_scalars(&a, &b);
            let pt = dtw_scalars(&a, &b);
            ensure!(pf <= fr + 1e-12, "pair {k}: projected Fréchet {pf} > {fr}");
            ensure!(pt <= tw + 1e-12 * tw.max(1.0), "pair {k}: projected DTW {pt} > {tw}");
        }
    }
    Ok(())
}

pub fn oracle_equivalence(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 31);
    for k in 0..40 {
        let (p, q) = random_pair(&mut rng, 6, 2 + k % 2);
        let (f, bf) = (
            ok(discrete_frechet(&p, &q))?.0,
            ok(discrete_frechet_bruteforce(&p, &q))?,
        );
        ensure!(f == bf, "pair {k}: Fréchet DP {f} vs enumeration {bf}");
        let (w, bw) = (ok(dtw(&p, &q))?.0, ok(dtw_bruteforce(&p, &q))?);
        ensure!(w == bw, "pair {k}: DTW DP {w} vs enumeration {bw}");
    }
    Ok(())
}

pub fn witness_validity(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 32);
    for k in 0..40 {
        let (p, q) = random_pair(&mut rng, 15, 3);
        let d = ok(DistanceMatrix::between(&p, &q))?;
        for (name, (value, w)) in [("Fréchet", ok(discrete_frechet(&p, &q))?), ("DTW", ok(dtw(&p, &q))?)] {
            let cells = w.cells();
            ensure!(cells.first() == Some(&(0, 0)), "pair {k} {name}: bad start");
            ensure!(
                cells.last() == Some(&(p.len() - 1, q.len() - 1)),
                "pair {k} {name}: bad end"
            );
            for s in cells.windows(2) {
                let (di, dj) = (s[1].0.wrapping_sub(s[0].0), s[1].1.wrapping_sub(s[0].1));
                ensure!(
                    matches!((di, dj), (1, 0) | (0, 1) | (1, 1)),
                    "pair {k} {name}: illegal step {:?} -> {:?}",
                    s[0],
                    s[1]
                );
            }
            let got = if name == "DTW" {
                cells.iter().fold(0.0, |acc, &(i, j)| acc + d.get(i, j))
            } else {
                cells.iter().fold(0.0, |acc: f64, &(i, j)| acc.max(d.get(i, j)))
            };
            ensure!(got == value, "pair {k} {name}: witness cost {got} vs value {value}");
        }
    }
    Ok(())
}

pub fn threshold_flip(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 33);
    for k in 0..40 {
        let (p, q) = random_pair(&mut rng, 12, 2);
        let v = ok(discrete_frechet(&p, &q))?.0;
        if v == 0.0 {
            continue;
        }
        let above = f64::from_bits(v.to_bits() + 1);
        ensure!(
            !traversal_exists(&ok(free_space(&p, &q, v))?),
            "pair {k}: traversal at the value"
        );
        ensure!(
            traversal_exists(&ok(free_space(&p, &q, above))?),
            "pair {k}: none just above"
        );
        let flags: Vec<bool> = (1..=20)
            .map(|s| free_space(&p, &q, v * s as f64 / 10.0).map(|f| traversal_exists(&f)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(
            flags.windows(2).all(|w| w[0] <= w[1]),
            "pair {k}: not monotone in the threshold"
        );
    }
    Ok(())
}

pub fn symmetry(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 34);
    for k in 0..40 {
        let (p, q) = random_pair(&mut rng, 15, 2 + k % 4);
        let (a, b) = (ok(discrete_frechet(&p, &q))?.0, ok(discrete_frechet(&q, &p))?.0);
        ensure!(a == b, "pair {k}: Fréchet {a} vs {b}");
        let (a, b) = (ok(dtw(&p, &q))?.0, ok(dtw(&q, &p))?.0);
        ensure!((a - b).abs() <= 1e-12 * a.max(1.0), "pair {k}: DTW {a} vs {b}");
    }
    Ok(())
}

// ---- packing ----

pub fn ball_length_shape(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 40);
    for k in 0..30 {
        let t = rng.random_range(2..12);
        let p = random_curve(&mut rng, t, 2 + k % 4);
        let c = random_curve(&mut rng, 1, p.dim()).vertex(0).to_owned();
        let lens: Vec<f64> = (1..=40)
            .map(|s| ball_curve_length(&p, &c, s as f64 * 0.07))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(is_monotone(&lens), "curve {k}: not monotone in r");
        let split = rng.random_range(0..t);
        let head = ok(p.window(0, split + 1))?;
        let tail = ok(p.window(split, t - split))?;
        let whole = ok(ball_curve_length(&p, &c, 0.8))?;
        let parts = ok(ball_curve_length(&head, &c, 0.8))? + ok(ball_curve_length(&tail, &c, 0.8))?;
        ensure!((whole - parts).abs() <= 1e-12, "curve {k}: {whole} vs split {parts}");
        let sampled = sampled_ball_length(&p, &c, 0.8, 20_000);
        ensure!(
            (whole - sampled).abs() <= 1e-3 * p.arc_length().max(1.0),
            "curve {k}: {whole} vs sampled {sampled}"
        );
    }
    Ok(())
}

pub fn estimator_shape(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 41);
    for k in 0..12 {
        let t = rng.random_range(2..9);
        let p = random_curve(&mut rng, t, 2 + k % 3);
        let mut last = 0.0;
        for res in 1..=5 {
            let rep = ok(packedness_estimate(&p, res))?;
            ensure!(rep.verify(&p), "curve {k} res {res}: witness fails");
            let sampled = sampled_ball_length(&p, &rep.center, rep.radius, 4000);
            ensure!(
                sampled >= rep.estimate * rep.radius - 1e-3 * p.arc_length(),
                "curve {k} res {res}: sampled length {sampled} below claim"
            );
            ensure!(rep.estimate >= last, "curve {k}: estimate fell at resolution {res}");
            last = rep.estimate;
        }
        ensure!(last >= 2.0 - 1e-9, "curve {k}: estimate {last} below 2");
    }
    Ok(())
}

pub fn sparse_radius_exact(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 42);
    for k in 0..60 {
        let tq = rng.random_range(2..15);
        let q = random_curve(&mut rng, tq, 2);
        let p = random_curve(&mut rng, 1, 2).vertex(0).to_owned();
        let b = rng.random_range(0.2..1.5);
        let s = ok(sparse_radius(&p, &q, b))?;
        ensure!(
            s.r >= b / 2.0 && s.r <= b,
            "case {k}: r = {} outside [{}, {b}]",
            s.r,
            b / 2.0
        );
        let direct = sphere_hits(&p, &q, s.r, 1e-12);
        ensure!(
            direct == s.edge_count,
            "case {k}: count {} vs direct {direct}",
            s.edge_count
        );
    }
    Ok(())
}

/// Sparse-radius counts on wedge curves against `2ĉ`. Returns the number
/// of flagged instances (count in `(2ĉ, 2ĉ + 2]`).
pub fn sparse_radius_on_wedges(seed: u64) -> Result<usize, String> {
    let mut rng = stream(seed, 43);
    let mut flagged = 0;
    for k in 0..10 {
        let t = rng.random_range(2..30);
        let alpha = rng.random_range(0.05..0.8);
        let (p, q, _) = ok(gen_wedge(WedgeSpec { t, alpha }))?;
        let c = ok(packedness_estimate(&q, 4))?.estimate;
        for i in 0..p.len() {
            let b = rng.random_range(0.05..1.0);
            let s = ok(sparse_radius(p.vertex(i), &q, b))?;
            let n = s.edge_count as f64;
            ensure!(
                n <= 2.0 * c + 2.0,
                "wedge {k} vertex {i}: count {n} above 2ĉ + 2 = {}",
                2.0 * c + 2.0
            );
            if n > 2.0 * c {
                flagged += 1;
            }
        }
    }
    Ok(flagged)
}

pub fn sparse_radius_packed(seed: u64) -> Result<(), String> {
    sparse_radius_on_wedges(seed).map(|_| ())
}

pub fn merge_postconditions(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 44);
    let mut merged_any = false;
    for k in 0..80 {
        let tq = rng.random_range(3..25);
        let q = random_curve(&mut rng, tq, 2);
        let p = Point::xy(0.0, 0.0);
        let b = rng.random_range(0.3..1.0);
        let far: Vec<usize> = (0..q.len())
            .filter(|&j| q.vertex(j).distance(&p) >= b && rng.random_bool(0.7))
            .collect();
        let i_set = IntervalSet::from_indices(far);
        if i_set.is_empty() {
            continue;
        }
        let (sr, j_set) = ok(merge_intervals(&p, &q, &i_set, b))?;
        let r = sr.r;
        ensure!(r >= b / 2.0 && r <= b, "case {k}: r {r} outside [b/2, b]");
        let spans = j_set.spans();
        ensure!(
            spans.windows(2).all(|w| w[0].1 < w[1].0),
            "case {k}: J not disjoint and sorted"
        );
        let starts: BTreeSet<usize> = i_set.spans().iter().map(|s| s.0).collect();
        let ends: BTreeSet<usize> = i_set.spans().iter().map(|s| s.1).collect();
        for &(lo, hi) in spans {
            ensure!(
                starts.contains(&lo) && ends.contains(&hi),
                "case {k}: J endpoint not from I"
            );
            for j in lo..=hi {
                ensure!(
                    q.vertex(j).distance(&p) >= r,
                    "case {k}: covered vertex {j} closer than r"
                );
            }
        }
        for &(lo, hi) in i_set.spans() {
            let covering = spans.iter().filter(|s| s.0 <= lo && hi <= s.1).count();
            ensure!(
                covering == 1,
                "case {k}: interval ({lo}, {hi}) covered {covering} times"
            );
        }
        merged_any |= j_set.len() < i_set.len();
    }
    ensure!(merged_any, "no instance exercised a merge");
    Ok(())
}

// ---- guarding ----

pub fn construction_valid(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 50);
    for k in 0..20 {
        let (p, q) = random_pair(&mut rng, 30, 2 + k % 2);
        let d = ok(DistanceMatrix::between(&p, &q))?;
        let delta = ok(discrete_frechet(&p, &q))?.0;
        for theta in [1.0, 2.0, 4.0] {
            let b = ok(build_guarding(&d, delta, theta))?;
            let v = verify_guarding(&d, &b, theta, delta);
            ensure!(v.ok, "pair {k} theta {theta}: {v}");
            ensure!(
                check_predecessors(&d, &b).is_none(),
                "pair {k} theta {theta}: member without safe predecessor"
            );
        }
    }
    Ok(())
}

pub fn verify_matches_enumeration(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 51);
    let mut seen = [false, false];
    for k in 0..60 {
        let (rows, cols) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let d = ok(DistanceMatrix::from_fn(rows, cols, |_, _| 1.0))?;
        let density = rng.random_range(0.05..0.5);
        let members: BTreeSet<Cell> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|_| rng.random_bool(density))
            .collect();
        let expected = all_traversals(rows, cols)
            .iter()
            .all(|t| t.iter().any(|c| members.contains(c)));
        let b = GuardingSet::new(members.iter().copied(), 1.0, 0.0);
        let got = verify_guarding(&d, &b, 1.0, 0.0).ok;
        ensure!(got == expected, "case {k}: validator {got}, enumeration {expected}");
        seen[usize::from(expected)] = true;
    }
    ensure!(seen[0] && seen[1], "seed produced only one outcome");
    Ok(())
}

pub fn avoidable_matches_enumeration(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 52);
    for k in 0..40 {
        let (tp, tq) = (rng.random_range(2..=7), rng.random_range(2..=7));
        let (p, q) = (random_curve(&mut rng, tp, 2), random_curve(&mut rng, tq, 2));
        let d = ok(DistanceMatrix::between(&p, &q))?;
        let delta = ok(discrete_frechet(&p, &q))?.0;
        let theta = [1.0, 1.5, 3.0][k % 3];
        let b = ok(build_guarding(&d, delta, theta))?;
        let got = find_avoidable(&d, &b);
        let expected = avoidable_by_paths(d.rows(), d.cols(), b.members());
        ensure!(got == expected, "case {k}: found {got:?}, enumeration {expected:?}");
    }
    Ok(())
}

pub fn avoidable_removal(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 53);
    for k in 0..20 {
        let (p, q) = random_pair(&mut rng, 25, 2);
        let d = ok(DistanceMatrix::between(&p, &q))?;
        let delta = ok(discrete_frechet(&p, &q))?.0;
        for theta in [1.0, 2.0] {
            let b = ok(build_guarding(&d, delta, theta))?;
            let r = remove_avoidable(&d, b.clone());
            let v = verify_guarding(&d, &r, theta, delta);
            ensure!(v.ok, "pair {k} theta {theta}: {v}");
            ensure!(r.members().is_subset(b.members()), "pair {k}: removal added members");
            ensure!(find_avoidable(&d, &r).is_empty(), "pair {k}: avoidable members remain");
            ensure!(
                check_predecessors(&d, &r).is_none(),
                "pair {k}: predecessor invariant broken"
            );
        }
    }
    Ok(())
}

pub fn trimming_walks(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 54);
    for k in 0..12 {
        let p = ok(gen_random_walk(rng.random_range(3..40), 2, 1.0, &mut rng))?;
        let q = ok(gen_random_walk(rng.random_range(3..40), 2, 1.0, &mut rng))?;
        let out = ok(trim_full(&p, &q, None))?;
        let d = ok(DistanceMatrix::between(&p, &q))?;
        let v = verify_guarding(&d, &out.set, 4.0, out.delta);
        ensure!(v.ok, "walk {k}: {v}");
        ensure!(
            out.predecessors_ok.iter().all(|x| *x),
            "walk {k}: predecessors {:?}",
            out.predecessors_ok
        );
        ensure!(out.set.theta() == 4.0, "walk {k}: theta {}", out.set.theta());

        // the filling pairs of each row stay at distance at least δ/2
        let mut b = remove_avoidable(&d, ok(build_guarding(&d, out.delta, 1.0))?);
        for i in 0..p.len() {
            let i_set = IntervalSet::from_indices(b.row(i));
            if i_set.is_empty() {
                continue;
            }
            let (_, j_set) = ok(merge_intervals(p.vertex(i), &q, &i_set, out.delta))?;
            for (a, c) in ok(trim_row_with(&d, &mut b, i, &j_set))? {
                ensure!(
                    d.get(a, c) >= out.delta / 2.0,
                    "walk {k}: filling pair ({a}, {c}) too close"
                );
            }
        }
    }
    Ok(())
}

/// Trimming statistics for one wedge: `(ĉ, |B|, bound, max row groups,
/// max column groups, verified, predecessors)`.
pub struct WedgeTrim {
    pub c: f64,
    pub size: usize,
    pub size_bound: f64,
    pub row_groups: usize,
    pub col_groups: usize,
    pub valid: bool,
    pub predecessors: bool,
}

pub fn wedge_trim(t: usize, alpha: f64) -> Result<WedgeTrim, String> {
    let (p, q, _) = ok(gen_wedge(WedgeSpec { t, alpha }))?;
    let c = ok(packedness_estimate(&p, 4))?
        .estimate
        .max(ok(packedness_estimate(&q, 4))?.estimate);
    let out = ok(trim_full(&p, &q, Some(c)))?;
    let d = ok(DistanceMatrix::between(&p, &q))?;
    let g = ok(extended_groups(&out.set, &out.row_intervals, &out.col_intervals))?;
    Ok(WedgeTrim {
        c,
        size: out.set.len(),
        size_bound: (3.0 * c + 4.0) * p.len().max(q.len()) as f64,
        row_groups: g.max_row(),
        col_groups: g.max_col(),
        valid: verify_guarding(&d, &out.set, 4.0, out.delta).ok,
        predecessors: out.predecessors_ok.iter().all(|x| *x),
    })
}

pub fn wedge_trim_ok(w: &WedgeTrim) -> bool {
    w.c < 3.0
        && w.valid
        && w.predecessors
        && w.size as f64 <= w.size_bound
        && w.col_groups as f64 <= w.c + 1.0
        && w.row_groups as f64 <= w.c + 2.0
}

pub fn trimming_wedges(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 55);
    for _ in 0..4 {
        let t = rng.random_range(2..40);
        let alpha = rng.random_range(0.05..0.8);
        let w = wedge_trim(t, alpha)?;
        ensure!(
            wedge_trim_ok(&w),
            "wedge t={t} alpha={alpha}: ĉ {} size {}/{} groups {}/{} valid {} preds {}",
            w.c,
            w.size,
            w.size_bound,
            w.row_groups,
            w.col_groups,
            w.valid,
            w.predecessors
        );
    }
    Ok(())
}

pub fn theorem_bound_shape(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 56);
    for _ in 0..50 {
        let d = rng.random_range(2..=5);
        let c = rng.random_range(2.0..10.0);
        let g = rng.random_range(0.05..0.9);
        let t = rng.random_range(1..500);
        let v = ok(theorem_bound(d, c, g, t))?;
        ensure!(ok(theorem_bound(d, c, g, t + 1))? > v, "not increasing in t");
        ensure!(ok(theorem_bound(d, c + 0.5, g, t))? > v, "not increasing in c");
        ensure!(ok(theorem_bound(d, c, g + 0.05, t))? < v, "not decreasing in gamma");
        let k = if d <= 3 { 1.0 } else { 1.0 + 2.0 / PI };
        let direct = (12.0 * c + 16.0) * t as f64 / g * k;
        ensure!((v - direct).abs() <= 1e-12 * direct, "value {v} vs {direct}");
    }
    Ok(())
}

// ---- generators ----

pub fn wedge_shape(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 60);
    for _ in 0..20 {
        let t = rng.random_range(1..60);
        let alpha = rng.random_range(0.01..1.55);
        let (p, q, a) = ok(gen_wedge(WedgeSpec { t, alpha }))?;
        let f = ok(discrete_frechet(&p, &q))?.0;
        ensure!((f - alpha.sin()).abs() <= 1e-12, "t={t} a={alpha}: Fréchet {f}");
        let w = ok(dtw(&p, &q))?.0;
        ensure!(
            (w - t as f64 * alpha.sin()).abs() <= 1e-12 * t as f64,
            "t={t} a={alpha}: DTW {w}"
        );
        ensure!((p.arc_length() - 2.0 * alpha.cos()).abs() <= 1e-12, "|P| wrong");
        ensure!((q.arc_length() - 2.0).abs() <= 1e-12, "|Q| wrong");
        let step = 2.0 * alpha.cos() / (2 * t) as f64;
        ensure!(
            p.edges().all(|(x, y)| (x.distance(y) - step).abs() <= 1e-12),
            "P spacing not uniform"
        );
        ensure!(
            p.len() == 2 * t + 1 && q.len() == 2 * t + 1 && a.vertices == 2 * t + 1,
            "complexity"
        );
    }
    Ok(())
}

/// Smallest `dist(P, Q) / dist(P', Q')` over `n` directions for the k = 12
/// star with hats, together with the base distance and the claimed factor.
pub fn star_ratio_min(seed: u64, n: usize) -> Result<(f64, f64, f64), String> {
    let (p, q, a) = ok(gen_star(StarSpec { k: 12, with_hats: true }))?;
    let base = ok(discrete_frechet(&p, &q))?.0;
    let dirs = ok(directions(seed, 0, 2, n))?;
    let mut worst = f64::INFINITY;
    for u in &dirs {
        let proj = frechet_scalars(&ok(project_scalars(&p, u))?, &ok(project_scalars(&q, u))?);
        let ratio = if proj == 0.0 { f64::INFINITY } else { base / proj };
        worst = worst.min(ratio);
    }
    Ok((worst, base, a.lower_bound_factor))
}

pub fn star_lower_bound(seed: u64) -> Result<(), String> {
    let (worst, base, factor) = star_ratio_min(seed, 200)?;
    ensure!(base >= 0.5, "base distance {base}");
    ensure!(worst >= factor, "ratio {worst} below {factor}");
    Ok(())
}

/// Closed form derived by hand for the fork pattern: each triple of columns
/// contributes `t + 1` members.
pub fn fork_members_derived(t: usize) -> usize {
    (t + 1) * t / 3
}

pub fn fork_members(t: usize) -> Result<usize, String> {
    let d = ok(gen_fork_matrix(ForkSpec {
        t,
        delta: 1.0,
        theta: 1.0,
    }))?;
    let delta = projfrechet::metrics::discrete_frechet_matrix(&d).0;
    let b = ok(build_guarding(&d, delta, 1.0))?;
    let v = verify_guarding(&d, &b, 1.0, delta);
    if !v.ok {
        return Err(format!("fork t={t}: {v}"));
    }
    Ok(b.len())
}

pub fn fork_quadratic(seed: u64) -> Result<(), String> {
    let t = 3 * (1 + (seed % 10) as usize);
    let n = fork_members(t)?;
    ensure!(n == fork_members_derived(t), "fork t={t}: {n} members");
    Ok(())
}

pub fn walk_shape(seed: u64) -> Result<(), String> {
    for d in 2..=5 {
        let step = 0.25 * d as f64;
        let a = ok(gen_random_walk(30, d, step, &mut stream(seed, 70 + d as u64)))?;
        let b = ok(gen_random_walk(30, d, step, &mut stream(seed, 70 + d as u64)))?;
        ensure!(a == b, "d={d}: not deterministic");
        ensure!(
            a.edges().all(|(x, y)| (x.distance(y) - step).abs() <= 1e-12),
            "d={d}: step length"
        );
        ensure!(a.vertex(0).norm() == 0.0, "d={d}: does not start at the origin");
    }
    Ok(())
}

// ---- montecarlo ----

pub fn walk_corpus(seed: u64, n: usize, lengths: (usize, usize), d: usize) -> Result<Vec<CorpusPair>, String> {
    let mut rng = stream(seed, 80);
    (0..n)
        .map(|k| {
            let tp = rng.random_range(lengths.0..=lengths.1);
            let tq = rng.random_range(lengths.0..=lengths.1);
            Ok(CorpusPair {
                pair_id: k as u64,
                ids: (format!("walk{}", 2 * k), format!("walk{}", 2 * k + 1)),
                p: ok(gen_random_walk(tp, d, 1.0, &mut rng))?,
                q: ok(gen_random_walk(tq, d, 1.0, &mut rng))?,
            })
        })
        .collect()
}

/// Raw, ECDF and bucket CSV bytes for one corpus run.
pub fn corpus_csvs(pairs: &[CorpusPair], config: &ExperimentConfig) -> Result<[Vec<u8>; 3], String> {
    let report = ok(run_corpus(pairs, config))?;
    let (mut raw, mut cdf, mut buckets) = (Vec::new(), Vec::new(), Vec::new());
    ok(write_raw_csv(&mut raw, &report))?;
    ok(write_ecdf_csv(&mut cdf, &report))?;
    let table = ok(bucket_stats(&report.rows, &[10, 20, 50], &config.gammas))?;
    ok(write_bucket_csv(&mut buckets, &table))?;
    Ok([raw, cdf, buckets])
}

pub fn mc_determinism(seed: u64) -> Result<(), String> {
    let pairs = walk_corpus(seed, 4, (8, 30), 3)?;
    let mut config = ExperimentConfig::new(seed, 3);
    config.samples = 100;
    config.prefix_lengths = vec![5, 20];
    config.subcurve = true;
    config.workers = Some(1);
    let a = corpus_csvs(&pairs, &config)?;
    config.workers = Some(3);
    let b = corpus_csvs(&pairs, &config)?;
    ensure!(a == b, "CSV output depends on the worker count");
    let report = ok(run_corpus(&pairs, &config))?;
    for r in &report.rows {
        ensure!(
            r.ratios.iter().all(|c| (0.0..=1.0 + 1e-12).contains(c)),
            "ratio outside [0, 1]"
        );
        let e = ok(ecdf(&r.ratios, &config.gammas))?;
        ensure!(
            is_monotone(&e.iter().map(|x| x.1).collect::<Vec<_>>()),
            "ECDF not monotone"
        );
    }
    Ok(())
}

pub fn ecdf_dkw(seed: u64) -> Result<(), String> {
    let mut rng = stream(seed, 81);
    let n = 20_000;
    let samples: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let grid: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    // DKW band at confidence 1 - 1e-6
    let eps = ((2.0f64 / 1e-6).ln() / (2.0 * n as f64)).sqrt();
    for (g, f) in ok(ecdf(&samples, &grid))? {
        ensure!((f - g).abs() <= eps, "ECDF {f} at {g} outside the DKW band {eps}");
    }
    Ok(())
}

/// Fraction of `n` directions where the wedge distortion exceeds the
/// theorem factor, for curves embedded in ℝ^d.
pub fn upper_bound_violations(
    t: usize,
    alpha: f64,
    d: usize,
    gamma: f64,
    n: usize,
    seed: u64,
) -> Result<(f64, f64), String> {
    let (p, q, _) = ok(gen_wedge(WedgeSpec { t, alpha }))?;
    let c = ok(packedness_estimate(&p, 4))?
        .estimate
        .max(ok(packedness_estimate(&q, 4))?.estimate)
        .max(2.0);
    let (p, q) = (ok(p.embed(d))?, ok(q.embed(d))?);
    let factor = ok(theorem_bound(d, c, gamma, p.len().max(q.len())))?;
    let dirs = ok(directions(seed, t as u64, d, n))?;
    let samples = ok(run_pair_with(&p, &q, DistanceKind::Frechet, &dirs))?;
    let bad = samples
        .iter()
        .filter(|s| s.ratio == 0.0 || 1.0 / s.ratio > factor)
        .count();
    Ok((bad as f64 / n as f64, c))
}

pub fn upper_bound_sampling(seed: u64) -> Result<(), String> {
    for (d, gamma) in [(2, 0.2), (3, 0.5), (4, 0.2)] {
        let (frac, _) = upper_bound_violations(5, 0.3, d, gamma, 500, seed)?;
        let slack = 3.0 * (gamma * (1.0 - gamma) / 500.0).sqrt();
        ensure!(frac <= gamma + slack, "d={d} gamma={gamma}: violation fraction {frac}");
    }
    Ok(())
}

/// Fraction of `n` directions where `dist / dist' ≥ (5α/6)·t` on a wedge,
/// counting a zero projected distance as satisfying the bound.
pub fn lower_bound_fraction(t: usize, alpha: f64, kind: DistanceKind, n: usize, seed: u64) -> Result<f64, String> {
    let (p, q, _) = ok(gen_wedge(WedgeSpec { t, alpha }))?;
    let dirs = ok(directions(seed, t as u64, 2, n))?;
    let samples = ok(run_pair_with(&p, &q, kind, &dirs))?;
    let threshold = 5.0 * alpha / 6.0 * t as f64;
    let hits = samples
        .iter()
        .filter(|s| s.ratio == 0.0 || 1.0 / s.ratio >= threshold)
        .count();
    Ok(hits as f64 / n as f64)
}

/// Every module invariant, by name.
pub fn suite() -> Vec<(&'static str, Check)> {
    vec![
        ("geom: unit vectors have norm 1", unit_norms as Check),
        ("geom: projection never increases pair distances", projection_contracts),
        ("geom: reduction CDF shape and bound", reduction_cdf_shape),
        ("geom: angle densities integrate to 1", angle_density_integrates),
        ("geom: angle distribution in R^3 (KS)", angle_distribution),
        ("geom: reduction frequencies match the CDF", reduction_frequencies_match),
        ("metrics: projection monotonicity", projection_monotone),
        ("metrics: DP equals enumeration", oracle_equivalence),
        ("metrics: witness validity", witness_validity),
        ("metrics: threshold consistency", threshold_flip),
        ("metrics: symmetry", symmetry),
        ("packing: ball length monotone, additive, exact", ball_length_shape),
        ("packing: estimator witness and monotonicity", estimator_shape),
        ("packing: sparse radius range and count", sparse_radius_exact),
        ("packing: sparse radius count on packed curves", sparse_radius_packed),
        ("packing: merge postconditions", merge_postconditions),
        ("guarding: constructed sets verify", construction_valid),
        ("guarding: validator matches enumeration", verify_matches_enumeration),
        (
            "guarding: avoidable detection matches enumeration",
            avoidable_matches_enumeration,
        ),
        ("guarding: avoidable removal", avoidable_removal),
        ("guarding: trimming on random walks", trimming_walks),
        ("guarding: trimming bounds on wedges", trimming_wedges),
        ("guarding: theorem factor", theorem_bound_shape),
        ("generators: wedge values and shape", wedge_shape),
        ("generators: star lower bound", star_lower_bound),
        ("generators: fork size", fork_quadratic),
        ("generators: random walks", walk_shape),
        ("montecarlo: determinism and ranges", mc_determinism),
        ("montecarlo: ECDF within the DKW band", ecdf_dkw),
        ("montecarlo: upper bound sampling on wedges", upper_bound_sampling),
    ]
}
