//! Deterministic CSV emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Rows of a CSV file built in memory and written in one go.
pub struct Csv {
    text: String,
    digits: usize,
}

impl Csv {
    pub fn new(header: &[&str], digits: usize) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text, digits }
    }

    /// `digits` significant digits in scientific notation; empty for `None`.
    pub fn float(&self, x: Option<f64>) -> String {
        match x {
            Some(v) if v.is_nan() => "NaN".into(),
            Some(v) => format!("{v:.*e}", self.digits.saturating_sub(1)),
            None => String::new(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf> {
        let path = dir.join(name);
        fs::write(&path, &self.text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }
}

/// Cells must not contain separators.
pub fn text(s: impl AsRef<str>) -> String {
    s.as_ref().replace([',', '\n'], ";")
}
