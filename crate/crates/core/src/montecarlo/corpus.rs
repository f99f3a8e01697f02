use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CorpusPair, McError};
use crate::geom::read_curve;
use crate::rng::{substream, Purpose};
use crate::Curve;

/// Curve files with unique ids.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub entries: Vec<(String, PathBuf)>,
}

impl CorpusManifest {
    /// One `id path` entry per line, `#` comments allowed. Relative paths
    /// are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, McError> {
        let mut entries = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((id, path)) = line.split_once(char::is_whitespace) else {
                return Err(McError::Io(format!("manifest line {}: expected `id path`", k + 1)));
            };
            let path = PathBuf::from(path.trim());
            let path = if path.is_absolute() { path } else { base.join(path) };
            entries.push((id.to_string(), path));
        }
        Self::checked(entries)
    }

    /// Every regular file in `dir`, sorted by name; the file name is the id.
    /// This is how a directory of GISCUP trajectory files is read.
    pub fn from_dir(dir: &Path) -> Result<Self, McError> {
        let listing = std::fs::read_dir(dir).map_err(|e| McError::Io(format!("{}: {e}", dir.display())))?;
        let mut files = Vec::new();
        for entry in listing {
            let entry = entry.map_err(|e| McError::Io(format!("{}: {e}", dir.display())))?;
            let path = entry.path();
            if path.is_file() {
                files.push(path);
            }
        }
        files.sort();
        let entries = files
            .into_iter()
            .map(|p| (p.file_name().unwrap_or_default().to_string_lossy().into_owned(), p))
            .collect();
        Self::checked(entries)
    }

    /// A manifest file, or a directory: its `manifest.txt` when present,
    /// otherwise every file in it.
    pub fn read(path: &Path) -> Result<Self, McError> {
        if path.is_dir() {
            let listed = path.join("manifest.txt");
            if !listed.is_file() {
                return Self::from_dir(path);
            }
            return Self::read(&listed);
        }
        let text = std::fs::read_to_string(path).map_err(|e| McError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    fn checked(entries: Vec<(String, PathBuf)>) -> Result<Self, McError> {
        let mut seen = BTreeSet::new();
        if let Some((id, _)) = entries.iter().find(|(id, _)| !seen.insert(id.clone())) {
            return Err(McError::Io(format!("duplicate curve id {id:?}")));
        }
        Ok(Self { entries })
    }

    /// Parses every file; keeps curves whose complexity lies in the
    /// inclusive range `filter` when one is given.
    pub fn load(&self, filter: Option<(usize, usize)>) -> Result<Vec<(String, Curve)>, McError> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (id, path) in &self.entries {
            let c = read_curve(path)?;
            if filter.is_none_or(|(lo, hi)| (lo..=hi).contains(&c.len())) {
                out.push((id.clone(), c));
            }
        }
        Ok(out)
    }
}

/// `n` pairs drawn uniformly with replacement; the two curves of a pair
/// are distinct entries.
pub fn sample_pairs(curves: &[(String, Curve)], n: usize, seed: u64) -> Result<Vec<CorpusPair>, McError> {
    let m = curves.len();
    if m < 2 {
        return Err(McError::Config(format!("need at least two curves to pair, have {m}")));
    }
    let mut rng = substream(seed, Purpose::Pairing, 0, 0);
    Ok((0..n)
        .map(|k| {
            let a = rng.random_range(0..m);
            let mut b = rng.random_range(0..m - 1);
            if b >= a {
                b += 1;
            }
            CorpusPair {
                pair_id: k as u64,
                ids: (curves[a].0.clone(), curves[b].0.clone()),
                p: curves[a].1.clone(),
                q: curves[b].1.clone(),
            }
        })
        .collect())
}
