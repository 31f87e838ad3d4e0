use std::fs;
use std::io::Write;
use std::path::Path;

use spanner_core::io::{parse_edges, parse_points};
use spanner_core::PointSet;

use crate::Failure;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_points(path: &Path) -> Result<PointSet, Failure> {
    parse_points(&read_text(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn read_edges(path: &Path) -> Result<(usize, Vec<(usize, usize)>), Failure> {
    parse_edges(&read_text(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes `text` to a temporary file next to `path`, then renames it over `path`.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::usage(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
