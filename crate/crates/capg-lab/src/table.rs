//! Minimal CSV output.
//!
//! Cells are plain tokens (numbers, short identifiers), so no quoting or
//! escaping is needed; writing rejects cells that would require it. Floats
//! are rendered with Rust's shortest round-trip formatting, which makes
//! byte-identical reruns a meaningful determinism check.

use std::io::Write as _;
use std::path::Path;

use crate::LabError;

#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: Vec<S>) -> Self {
        let header: Vec<String> = header.into_iter().map(Into::into).collect();
        assert!(!header.is_empty(), "table needs at least one column");
        for cell in &header {
            assert_cell_is_plain(cell);
        }
        Table { header, rows: Vec::new() }
    }

    pub fn push_row(&mut self, cells: Vec<String>) {
        assert_eq!(
            cells.len(),
            self.header.len(),
            "row width {} does not match header width {}",
            cells.len(),
            self.header.len()
        );
        for cell in &cells {
            assert_cell_is_plain(cell);
        }
        self.rows.push(cells);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Writes the table, creating parent directories as needed.
    pub fn write_to(&self, path: &Path) -> Result<(), LabError> {
        let describe = |e: std::io::Error| {
            LabError::Config(format!("cannot write output {}: {e}", path.display()))
        };
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(describe)?;
            }
        }
        let mut file = std::fs::File::create(path).map_err(describe)?;
        file.write_all(self.to_csv_string().as_bytes()).map_err(describe)?;
        Ok(())
    }
}

fn assert_cell_is_plain(cell: &str) {
    assert!(
        !cell.contains([',', '"', '\n', '\r']),
        "cell {cell:?} would need CSV quoting"
    );
}

/// Shortest round-trip decimal form of a float.
pub fn fmt_f64(x: f64) -> String {
    debug_assert!(x.is_finite(), "refusing to format non-finite value");
    format!("{x}")
}
