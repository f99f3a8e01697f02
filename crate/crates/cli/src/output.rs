use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

pub use projfrechet::geom::format::fmt_float;

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

pub fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).with_context(|| format!("cannot create {}", path.display()))
}

pub fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s.into_bytes()
}

pub fn print_json(v: &Value) -> Result<()> {
    std::io::stdout().write_all(&json_bytes(v))?;
    Ok(())
}

/// Header plus rows of already formatted fields.
pub fn print_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        writeln!(out, "{}", r.join(","))?;
    }
    Ok(())
}
