use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DistortionSample, ExperimentConfig, McError, Protocol, BLOCK, ZERO_DISTANCE};
use crate::geom::{project_scalars, sample_unit_vector};
use crate::metrics::DistanceKind;
use crate::rng::{substream, Purpose};
use crate::{Curve, UnitVector};

/// The `r` directions used for pair `pair_id`.
pub fn directions(seed: u64, pair_id: u64, dim: usize, r: usize) -> Result<Vec<UnitVector>, McError> {
    let blocks = r.div_ceil(BLOCK);
    let chunks: Result<Vec<Vec<UnitVector>>, _> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(seed, Purpose::Directions, pair_id, b as u64);
            let n = BLOCK.min(r - b * BLOCK);
            (0..n).map(|_| sample_unit_vector(dim, &mut rng)).collect()
        })
        .collect();
    Ok(chunks?.into_iter().flatten().collect())
}

fn base_distance(kind: DistanceKind, p: &Curve, q: &Curve) -> Result<f64, McError> {
    let base = kind.value(p, q)?;
    if base < ZERO_DISTANCE {
        return Err(McError::UndefinedDistortion(base));
    }
    Ok(base)
}

/// Ratios for fixed directions.
pub fn run_pair_with(
    p: &Curve,
    q: &Curve,
    kind: DistanceKind,
    dirs: &[UnitVector],
) -> Result<Vec<DistortionSample>, McError> {
    let base = base_distance(kind, p, q)?;
    dirs.par_iter()
        .map(|u| {
            let a = project_scalars(p, u)?;
            let b = project_scalars(q, u)?;
            Ok(DistortionSample {
                direction: *u,
                ratio: kind.on_scalars(&a, &b) / base,
            })
        })
        .collect()
}

fn check_dim(config: &ExperimentConfig, c: &Curve) -> Result<(), McError> {
    if c.dim() != config.dim {
        return Err(McError::Dimension {
            expected: config.dim,
            found: c.dim(),
        });
    }
    Ok(())
}

/// `config.samples` distortion samples for the whole curves.
pub fn run_pair(
    p: &Curve,
    q: &Curve,
    config: &ExperimentConfig,
    pair_id: u64,
) -> Result<Vec<DistortionSample>, McError> {
    config.validate()?;
    check_dim(config, p)?;
    check_dim(config, q)?;
    let dirs = directions(config.seed, pair_id, config.dim, config.samples)?;
    run_pair_with(p, q, config.kind, &dirs)
}

/// One protocol evaluation at one complexity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRows {
    pub pair_id: u64,
    pub protocol: Protocol,
    pub complexity: usize,
    /// Start offsets into P and Q (0-based) for subcurves.
    pub offsets: Option<(usize, usize)>,
    pub base: f64,
    pub ratios: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusions {
    /// Base distance below the zero threshold.
    pub zero_base: usize,
    /// Requested length longer than a curve.
    pub too_long: usize,
}

impl Exclusions {
    fn add(&mut self, o: Exclusions) {
        self.zero_base += o.zero_base;
        self.too_long += o.too_long;
    }
}

fn row(
    p: &Curve,
    q: &Curve,
    kind: DistanceKind,
    dirs: &[UnitVector],
    meta: (u64, Protocol, usize, Option<(usize, usize)>),
    ex: &mut Exclusions,
) -> Result<Option<ProtocolRows>, McError> {
    match run_pair_with(p, q, kind, dirs) {
        Ok(samples) => Ok(Some(ProtocolRows {
            pair_id: meta.0,
            protocol: meta.1,
            complexity: meta.2,
            offsets: meta.3,
            base: kind.value(p, q)?,
            ratios: samples.into_iter().map(|s| s.ratio).collect(),
        })),
        Err(McError::UndefinedDistortion(_)) => {
            ex.zero_base += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Prefixes `P_ℓ`, `Q_ℓ` for each configured length.
pub fn run_prefix_protocol(
    p: &Curve,
    q: &Curve,
    config: &ExperimentConfig,
    pair_id: u64,
) -> Result<(Vec<ProtocolRows>, Exclusions), McError> {
    config.validate()?;
    if config.prefix_lengths.is_empty() {
        return Err(McError::Empty("prefix length list"));
    }
    let dirs = directions(config.seed, pair_id, config.dim, config.samples)?;
    prefix_rows(p, q, config, pair_id, &dirs)
}

fn prefix_rows(
    p: &Curve,
    q: &Curve,
    config: &ExperimentConfig,
    pair_id: u64,
    dirs: &[UnitVector],
) -> Result<(Vec<ProtocolRows>, Exclusions), McError> {
    let mut ex = Exclusions::default();
    let mut rows = Vec::new();
    for &l in &config.prefix_lengths {
        if l > p.len().min(q.len()) {
            ex.too_long += 1;
            continue;
        }
        let meta = (pair_id, Protocol::Prefix, l, None);
        rows.extend(row(&p.prefix(l)?, &q.prefix(l)?, config.kind, dirs, meta, &mut ex)?);
    }
    Ok((rows, ex))
}

/// Random windows of `ℓ` consecutive vertices, with independent uniform
/// start offsets for P and Q drawn from `offset_rng`.
pub fn run_subcurve_protocol<R: Rng + ?Sized>(
    p: &Curve,
    q: &Curve,
    config: &ExperimentConfig,
    pair_id: u64,
    offset_rng: &mut R,
) -> Result<(Vec<ProtocolRows>, Exclusions), McError> {
    config.validate()?;
    if config.prefix_lengths.is_empty() {
        return Err(McError::Empty("subcurve length list"));
    }
    let offsets = draw_offsets(p, q, &config.prefix_lengths, offset_rng);
    let dirs = directions(config.seed, pair_id, config.dim, config.samples)?;
    subcurve_rows(p, q, config, pair_id, &offsets, &dirs)
}

fn draw_offsets<R: Rng + ?Sized>(p: &Curve, q: &Curve, lengths: &[usize], rng: &mut R) -> Vec<Option<(usize, usize)>> {
    lengths
        .iter()
        .map(|&l| {
            (l <= p.len().min(q.len())).then(|| (rng.random_range(0..=p.len() - l), rng.random_range(0..=q.len() - l)))
        })
        .collect()
}

fn subcurve_rows(
    p: &Curve,
    q: &Curve,
    config: &ExperimentConfig,
    pair_id: u64,
    offsets: &[Option<(usize, usize)>],
    dirs: &[UnitVector],
) -> Result<(Vec<ProtocolRows>, Exclusions), McError> {
    let mut ex = Exclusions::default();
    let mut rows = Vec::new();
    for (&l, off) in config.prefix_lengths.iter().zip(offsets) {
        let Some((a, b)) = *off else {
            ex.too_long += 1;
            continue;
        };
        let meta = (pair_id, Protocol::Subcurve, l, Some((a, b)));
        rows.extend(row(
            &p.window(a, l)?,
            &q.window(b, l)?,
            config.kind,
            dirs,
            meta,
            &mut ex,
        )?);
    }
    Ok((rows, ex))
}

/// A curve pair in a corpus, with the ids of its two curves.
#[derive(Clone, Debug)]
pub struct CorpusPair {
    pub pair_id: u64,
    pub ids: (String, String),
    pub p: Curve,
    pub q: Curve,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ProtocolRows>,
    pub exclusions: Exclusions,
    /// `(pair_id, id of P, id of Q)`.
    pub pairing: Vec<(u64, String, String)>,
}

/// Whole-curve, prefix and subcurve protocols for every pair.
pub fn run_corpus(pairs: &[CorpusPair], config: &ExperimentConfig) -> Result<ExperimentReport, McError> {
    config.validate()?;
    let work = || -> Result<ExperimentReport, McError> {
        let mut rows = Vec::new();
        let mut ex = Exclusions::default();
        for pair in pairs {
            check_dim(config, &pair.p)?;
            check_dim(config, &pair.q)?;
            // offsets first, from their own stream
            let mut orng = substream(config.seed, Purpose::Offsets, pair.pair_id, 0);
            let offsets = draw_offsets(&pair.p, &pair.q, &config.prefix_lengths, &mut orng);
            let dirs = directions(config.seed, pair.pair_id, config.dim, config.samples)?;
            let whole = (pair.pair_id, Protocol::Whole, pair.p.len().max(pair.q.len()), None);
            rows.extend(row(&pair.p, &pair.q, config.kind, &dirs, whole, &mut ex)?);
            if !config.prefix_lengths.is_empty() {
                let (r, e) = prefix_rows(&pair.p, &pair.q, config, pair.pair_id, &dirs)?;
                rows.extend(r);
                ex.add(e);
                if config.subcurve {
                    let (r, e) = subcurve_rows(&pair.p, &pair.q, config, pair.pair_id, &offsets, &dirs)?;
                    rows.extend(r);
                    ex.add(e);
                }
            }
        }
        Ok(ExperimentReport {
            config: config.clone(),
            rows,
            exclusions: ex,
            pairing: pairs
                .iter()
                .map(|p| (p.pair_id, p.ids.0.clone(), p.ids.1.clone()))
                .collect(),
        })
    };
    match config.workers {
        None => work(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| McError::Config(e.to_string()))?
            .install(work),
    }
}
