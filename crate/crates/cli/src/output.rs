//! Report writers. Everything is rendered to memory first and then written
//! in one go, to standard output or atomically to a file.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::failure::{CliResult, Failure};

/// Rows of a long-format CSV table.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

pub fn num(v: f64) -> String {
    v.to_string()
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Failure::io(format!("cannot serialize report: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// CSV with the configuration as a leading `# config: {...}` comment line.
pub fn csv_bytes(config: &Value, table: &Table) -> CliResult<Vec<u8>> {
    let mut bytes = format!("# config: {config}\n").into_bytes();
    let mut w = csv::Writer::from_writer(&mut bytes);
    let fail = |e: csv::Error| Failure::io(format!("cannot render csv: {e}"));
    w.write_record(&table.header).map_err(fail)?;
    for row in &table.rows {
        w.write_record(row).map_err(fail)?;
    }
    w.flush().map_err(|e| Failure::io(e.to_string()))?;
    drop(w);
    Ok(bytes)
}

/// Writes to `dest` through a temporary file in the same directory, or to
/// standard output when `dest` is `None` or `-`.
pub fn write(dest: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    let Some(path) = dest.filter(|p| p.as_os_str() != "-") else {
        let mut out = std::io::stdout().lock();
        return match out.write_all(bytes).and_then(|_| out.flush()) {
            // A reader such as `head` closing early is not an error.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Failure::io(format!("cannot write to stdout: {e}")))
            }
            _ => Ok(()),
        };
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Failure::io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
