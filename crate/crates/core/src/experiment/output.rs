//! CSV and JSON writers. CSV files are UTF-8, comma separated, LF line ends,
//! with one header row. Floats use the shortest representation that reads
//! back to the same value, so outputs are byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::DegreeHistogram;

/// A CSV document built in memory.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv::default();
        csv.row(header.iter().map(|s| s as &dyn std::fmt::Display));
        csv
    }

    pub fn row<'a>(&mut self, fields: impl IntoIterator<Item = &'a dyn std::fmt::Display>) {
        for (i, f) in fields.into_iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            write!(self.text, "{f}").expect("writing to a String");
        }
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

pub fn histogram_csv(h: &DegreeHistogram) -> Csv {
    let mut csv = Csv::new(&["k", "count", "fraction"]);
    let n = h.total() as f64;
    for (k, c) in h.iter() {
        csv.row([&k as &dyn std::fmt::Display, &c, &(c as f64 / n)]);
    }
    csv
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(dir, name, &text)
}
