//! Result tables and atomic file output.
//!
//! Every artifact is written to a temporary file in the destination
//! directory and renamed into place, so a failed run never leaves a
//! partial file. CSV uses comma separators, dot decimals, a header row and
//! 17 significant digits; JSON documents carry a top-level
//! `schema_version`.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Rectangular numeric table with named columns.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Table {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_sig(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Formats with 17 significant digits (round-trips every f64).
pub fn format_sig(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v}")
    } else {
        format!("{v:.16e}")
    }
}

/// Writes bytes atomically: temp file in the target directory, fsync,
/// rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp-{}",
            path.file_name().and_then(|f| f.to_str()).unwrap_or("out"),
            std::process::id()
        )),
        None => std::path::PathBuf::from(format!(".out.tmp-{}", std::process::id())),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes a table as CSV, atomically.
pub fn write_csv(path: &Path, table: &Table) -> Result<()> {
    write_atomic(path, table.to_csv().as_bytes())
}

/// Wraps a serializable payload in `{schema_version, kind, data}` and
/// writes it atomically as pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, kind: &str, data: &T) -> Result<()> {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "data": data,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// Cache directory: `WEYL_LAB_CACHE` if set, else none.
pub fn cache_dir() -> Option<std::path::PathBuf> {
    std::env::var_os("WEYL_LAB_CACHE").map(std::path::PathBuf::from)
}
