use serde_json::Value;
use std::io::Write;

use crate::args::Format;
use crate::error::Result;

/// A command result in every output format.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Header row first.
    pub csv: Vec<Vec<String>>,
}

impl Report {
    pub fn emit(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json).map_err(|e| std::io::Error::other(e.to_string()))?;
                writeln!(out)?;
            }
            Format::Text => writeln!(out, "{}", self.text.trim_end())?,
            Format::Csv => out.write_all(&csv_bytes(&self.csv)?)?,
        }
        Ok(())
    }
}

pub fn csv_bytes(rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
}

pub fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    strings(xs).join(sep)
}
