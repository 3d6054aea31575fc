use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What a subcommand hands back for writing.
#[derive(Default)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Free-form lines for `--format text`; falls back to pretty JSON.
    pub text: Vec<String>,
    /// `(x, y[, z])` triples for `--emit-plotdata`.
    pub plot: Vec<Vec<String>>,
    /// Failed assertions, first one reported on stderr.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, ..Default::default() }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn assert(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv if !self.header.is_empty() => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.into_inner().map_err(|e| io::Error::other(e.to_string()))
            }
            Format::Csv => Err(io::Error::new(io::ErrorKind::InvalidInput, "this subcommand has no CSV form")),
            Format::Text if !self.text.is_empty() => {
                let mut out = self.text.join("\n");
                out.push('\n');
                Ok(out.into_bytes())
            }
            Format::Text => self.render(Format::Json),
        }
    }
}

pub fn write_output(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}

pub fn write_plot(rows: &[Vec<String>], path: &Path) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}
