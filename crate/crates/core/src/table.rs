//! Named-column numeric tables with deterministic CSV and JSON output.
//!
//! CSV values use `{:.16e}` (17 significant digits), which round-trips every
//! `f64` exactly.

use std::io::{self, Write};

use serde::Serialize;

/// Ordered set of equally long `f64` columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    columns: Vec<Column>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct Column {
    name: String,
    values: Vec<f64>,
}

pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a column. Panics if its length differs from existing columns.
    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.values.len(), values.len(), "column length mismatch");
        }
        self.columns.push(Column {
            name: name.into(),
            values,
        });
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.names().join(","))?;
        for r in 0..self.rows() {
            let line: Vec<String> = self.columns.iter().map(|c| format_f64(c.values[r])).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(io::Error::other)
    }
}
