use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use projfrechet::generators::{gen_fork_matrix, gen_random_walk, gen_star, gen_wedge, ForkSpec, StarSpec, WedgeSpec};
use projfrechet::geom::{read_curve, write_curve};
use projfrechet::guarding::{build_guarding, extended_groups, verify_guarding, write_members_csv, Sidecar};
use projfrechet::metrics::{discrete_frechet_matrix, DistanceMatrix};
use projfrechet::montecarlo::{
    bucket_stats, default_buckets, default_gammas, directions, run_corpus, run_pair_with, sample_pairs,
    write_bucket_csv, write_ecdf_csv, write_raw_csv, CorpusManifest, Summary,
};
use projfrechet::packing::packedness_estimate;
use projfrechet::rng::{substream, Purpose};
use projfrechet::{Curve, DistanceKind, ExperimentConfig, UnitVector};

use crate::output::{create_dir, fmt_float, json_bytes, print_json, print_table, write_file};
use crate::{CpackArgs, DistArgs, Format, GenCommand, GuardArgs, Invariant, McArgs, ProjectArgs};

fn load_pair(p: &Path, q: &Path) -> Result<(Curve, Curve)> {
    let p = read_curve(p)?;
    let q = read_curve(q)?;
    if p.dim() != q.dim() {
        bail!("dimension mismatch: {} vs {}", p.dim(), q.dim());
    }
    Ok((p, q))
}

fn load_matrix(path: &Path) -> Result<DistanceMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    DistanceMatrix::parse(&text).with_context(|| format!("{}", path.display()))
}

pub fn dist(a: DistArgs, format: Format) -> Result<()> {
    let (p, q) = load_pair(&a.p, &a.q)?;
    let d = DistanceMatrix::between(&p, &q)?;
    let (value, witness) = match a.kind {
        DistanceKind::Frechet => projfrechet::metrics::discrete_frechet(&p, &q)?,
        DistanceKind::Dtw => projfrechet::metrics::dtw(&p, &q)?,
    };
    let cost = match a.kind {
        DistanceKind::Frechet => witness.max_cost(&d),
        DistanceKind::Dtw => witness.sum_cost(&d),
    };
    if cost != value {
        return Err(Invariant(format!("witness cost {cost} differs from value {value}")).into());
    }
    if let Some(path) = &a.witness {
        let mut text = String::from("i,j,distance\n");
        for &(i, j) in witness.cells() {
            text.push_str(&format!("{},{},{}\n", i + 1, j + 1, fmt_float(d.get(i, j))));
        }
        write_file(path, text.as_bytes())?;
    }
    match format {
        Format::Csv => print_table(&["kind", "value"], [vec![a.kind.name().into(), fmt_float(value)]]),
        Format::Json => print_json(&json!({ "kind": a.kind, "value": value, "witness_len": witness.len() })),
    }
}

pub fn project(a: ProjectArgs, format: Format) -> Result<()> {
    let (p, q) = load_pair(&a.p, &a.q)?;
    let dirs = match (&a.direction, a.seed) {
        (Some(u), _) => vec![UnitVector::normalize(projfrechet::Point::new(u)?)?],
        (None, Some(seed)) => directions(seed, 0, p.dim(), a.samples)?,
        (None, None) => bail!("either --direction or --seed is required"),
    };
    if dirs[0].dim() != p.dim() {
        bail!("direction has dimension {}, curves have {}", dirs[0].dim(), p.dim());
    }
    let base = a.kind.value(&p, &q)?;
    let samples = run_pair_with(&p, &q, a.kind, &dirs)?;
    if let Some(s) = samples
        .iter()
        .find(|s| !(0.0..=1.0 + 1e-12).contains(&s.ratio) && a.kind == DistanceKind::Frechet)
    {
        return Err(Invariant(format!("projected Fréchet ratio {} above 1", s.ratio)).into());
    }
    match format {
        Format::Csv => {
            let mut header = vec!["sample_idx".to_string(), "ratio".to_string()];
            header.extend((1..=p.dim()).map(|k| format!("u_{k}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            print_table(
                &header,
                samples.iter().enumerate().map(|(k, s)| {
                    let mut row = vec![(k + 1).to_string(), fmt_float(s.ratio)];
                    row.extend(s.direction.coords().iter().map(|c| fmt_float(*c)));
                    row
                }),
            )
        }
        Format::Json => print_json(&json!({
            "kind": a.kind,
            "base": base,
            "samples": samples
                .iter()
                .map(|s| json!({ "direction": s.direction.coords(), "ratio": s.ratio }))
                .collect::<Vec<_>>(),
        })),
    }
}

fn emit_guarding(
    d: &DistanceMatrix,
    b: &projfrechet::GuardingSet,
    sidecar: Value,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let mut csv = Vec::new();
    write_members_csv(&mut csv, d, b)?;
    if let Some(path) = out {
        write_file(path, &csv)?;
        write_file(&path.with_extension("json"), &json_bytes(&sidecar))?;
    }
    match format {
        Format::Csv if out.is_none() => {
            use std::io::Write;
            std::io::stdout().write_all(&csv)?;
            Ok(())
        }
        Format::Csv => Ok(()),
        Format::Json => print_json(&sidecar),
    }
}

pub fn guard(a: GuardArgs, format: Format) -> Result<()> {
    if a.trim {
        let (p, q) = load_pair(
            a.p.as_deref().expect("clap requires P"),
            a.q.as_deref().expect("clap requires Q"),
        )?;
        let c = packedness_estimate(&p, projfrechet::packing::DEFAULT_RESOLUTION)?
            .estimate
            .max(packedness_estimate(&q, projfrechet::packing::DEFAULT_RESOLUTION)?.estimate);
        let outcome = projfrechet::guarding::trim_full(&p, &q, Some(c))?;
        let d = DistanceMatrix::between(&p, &q)?;
        let check = verify_guarding(&d, &outcome.set, 4.0, outcome.delta);
        if !check.ok {
            return Err(Invariant(format!("trimmed set is not 4-guarding: {check}")).into());
        }
        let groups = extended_groups(&outcome.set, &outcome.row_intervals, &outcome.col_intervals)?;
        let mut side = Sidecar::new(&outcome.set);
        side.row_groups = Some(groups.row_groups.clone());
        side.col_groups = Some(groups.col_groups.clone());
        let mut sidecar = serde_json::to_value(&side)?;
        sidecar["packedness_estimate"] = json!(c);
        sidecar["size_bound"] = json!(outcome.size_bound);
        sidecar["phase_sizes"] = json!(outcome.phase_sizes);
        sidecar["predecessors_ok"] = json!(outcome.predecessors_ok);
        sidecar["max_row_groups"] = json!(groups.max_row());
        sidecar["max_col_groups"] = json!(groups.max_col());
        return emit_guarding(&d, &outcome.set, sidecar, a.out.as_deref(), format);
    }
    let d = match (&a.matrix, &a.p, &a.q) {
        (Some(m), _, _) => load_matrix(m)?,
        (None, Some(p), Some(q)) => {
            let (p, q) = load_pair(p, q)?;
            DistanceMatrix::between(&p, &q)?
        }
        _ => bail!("give two curve files or --matrix"),
    };
    let delta = a.delta.unwrap_or_else(|| discrete_frechet_matrix(&d).0);
    let b = build_guarding(&d, delta, a.theta)?;
    let check = verify_guarding(&d, &b, a.theta, delta);
    if !check.ok {
        return Err(Invariant(format!("set is not {}-guarding: {check}", a.theta)).into());
    }
    let sidecar = serde_json::to_value(Sidecar::new(&b))?;
    emit_guarding(&d, &b, sidecar, a.out.as_deref(), format)
}

pub fn cpack(a: CpackArgs, format: Format) -> Result<()> {
    let p = read_curve(&a.file)?;
    let r = packedness_estimate(&p, a.resolution)?;
    if !r.verify(&p) {
        return Err(Invariant(format!("witness ball does not reproduce estimate {}", r.estimate)).into());
    }
    let packed = r.estimate < a.packed_threshold;
    match format {
        Format::Csv => print_table(
            &["estimate", "radius", "length", "c_packed"],
            [vec![
                fmt_float(r.estimate),
                fmt_float(r.radius),
                fmt_float(r.length),
                packed.to_string(),
            ]],
        ),
        Format::Json => {
            let mut v = serde_json::to_value(&r)?;
            v["threshold"] = json!(a.packed_threshold);
            v["c_packed"] = json!(packed);
            print_json(&v)
        }
    }
}

fn write_pair(out: &Path, p: &Curve, q: &Curve, analytic: Value) -> Result<Vec<PathBuf>> {
    create_dir(out)?;
    let files = vec![out.join("P.txt"), out.join("Q.txt"), out.join("analytic.json")];
    write_curve(&files[0], p)?;
    write_curve(&files[1], q)?;
    write_file(&files[2], &json_bytes(&analytic))?;
    Ok(files)
}

pub fn gen(g: GenCommand, format: Format) -> Result<()> {
    let files = match g {
        GenCommand::Wedge { t, alpha, out } => {
            let (p, q, analytic) = gen_wedge(WedgeSpec { t, alpha })?;
            write_pair(&out, &p, &q, serde_json::to_value(analytic)?)?
        }
        GenCommand::Star { k, hats, out } => {
            let (p, q, analytic) = gen_star(StarSpec { k, with_hats: hats })?;
            write_pair(&out, &p, &q, serde_json::to_value(analytic)?)?
        }
        GenCommand::Fork { t, delta, theta, out } => {
            let m = gen_fork_matrix(ForkSpec { t, delta, theta })?;
            create_dir(&out)?;
            let files = vec![out.join("fork.txt"), out.join("analytic.json")];
            write_file(&files[0], m.to_text().as_bytes())?;
            // size of the built set; closed form only for t ≡ 0 mod 3
            let size = (t % 3 == 0).then(|| (t + 1) * t / 3);
            let analytic = json!({ "family": "fork", "t": t, "delta": delta, "theta": theta, "guarding_size": size });
            write_file(&files[1], &json_bytes(&analytic))?;
            files
        }
        GenCommand::Walk {
            t,
            t_max,
            dim,
            step,
            count,
            seed,
            out,
        } => {
            let hi = t_max.unwrap_or(t);
            if hi < t {
                bail!("--t-max {hi} is below --t {t}");
            }
            create_dir(&out)?;
            let width = count.to_string().len().max(3);
            let mut manifest = String::new();
            let mut files = Vec::with_capacity(count + 1);
            for k in 0..count {
                let mut rng = substream(seed, Purpose::Generator, k as u64, 0);
                let len = rand_len(&mut rng, t, hi);
                let c = gen_random_walk(len, dim, step, &mut rng)?;
                let name = format!("walk_{:0width$}", k + 1);
                let path = out.join(format!("{name}.txt"));
                write_curve(&path, &c)?;
                manifest.push_str(&format!("{name} {name}.txt\n"));
                files.push(path);
            }
            let path = out.join("manifest.txt");
            write_file(&path, manifest.as_bytes())?;
            files.push(path);
            files
        }
    };
    let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    match format {
        Format::Csv => print_table(&["file"], names.into_iter().map(|n| vec![n])),
        Format::Json => print_json(&json!({ "files": names })),
    }
}

fn rand_len(rng: &mut projfrechet::rng::Rng, lo: usize, hi: usize) -> usize {
    use rand::Rng as _;
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

pub fn mc(a: McArgs, format: Format) -> Result<()> {
    let manifest = CorpusManifest::read(&a.manifest)?;
    let filter = a.filter.as_ref().map(|f| (f[0], f[1]));
    let curves = manifest.load(filter)?;
    let dim = match (a.dim, curves.first()) {
        (Some(d), _) => d,
        (None, Some((_, c))) => c.dim(),
        (None, None) => bail!("{}: no curves to sample", a.manifest.display()),
    };
    let pairs = sample_pairs(&curves, a.pairs, a.seed)?;
    let config = ExperimentConfig {
        samples: a.samples,
        kind: a.kind,
        prefix_lengths: a.prefix.clone(),
        subcurve: a.subcurve,
        gammas: if a.gamma.is_empty() {
            default_gammas()
        } else {
            a.gamma.clone()
        },
        workers: a.workers,
        ..ExperimentConfig::new(a.seed, dim)
    };
    let report = run_corpus(&pairs, &config)?;
    let buckets = if a.buckets.is_empty() {
        default_buckets()
    } else {
        a.buckets.clone()
    };
    let table = bucket_stats(&report.rows, &buckets, &config.gammas)?;
    let summary = Summary::new(
        &report,
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "manifest": a.manifest.display().to_string(),
            "curves": curves.len(),
            "buckets": buckets,
            "created_unix": std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }),
    );
    if config.kind == DistanceKind::Frechet && summary.max_ratio > 1.0 + 1e-12 {
        return Err(Invariant(format!("projected Fréchet ratio {} above 1", summary.max_ratio)).into());
    }
    create_dir(&a.out)?;
    let (mut raw, mut cdf, mut bucket) = (Vec::new(), Vec::new(), Vec::new());
    write_raw_csv(&mut raw, &report)?;
    write_ecdf_csv(&mut cdf, &report)?;
    write_bucket_csv(&mut bucket, &table)?;
    let summary = serde_json::to_value(&summary)?;
    let outputs = [
        ("raw.csv", raw),
        ("ecdf.csv", cdf),
        ("buckets.csv", bucket),
        ("summary.json", json_bytes(&summary)),
    ];
    for (name, bytes) in &outputs {
        write_file(&a.out.join(name), bytes)?;
    }
    match format {
        Format::Csv => print_table(
            &["file", "bytes"],
            outputs
                .iter()
                .map(|(n, b)| vec![a.out.join(n).display().to_string(), b.len().to_string()]),
        ),
        Format::Json => print_json(&summary),
    }
}
