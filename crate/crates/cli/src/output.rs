//! Report sinks: JSONL or CSV, to stdout or a file.

use crate::OutputFormat;
use anyhow::{Context, Result};
use schatten_harmonics::report::InequalityReport;
use std::io::Write;
use std::path::PathBuf;

pub struct Sink {
    out: Box<dyn Write>,
    format: OutputFormat,
    wrote_header: bool,
}

impl Sink {
    pub fn new(output: Option<PathBuf>, format: OutputFormat) -> Result<Self> {
        let out: Box<dyn Write> = match output {
            Some(path) => Box::new(
                std::fs::File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?,
            ),
            None => Box::new(std::io::stdout()),
        };
        Ok(Sink {
            out,
            format,
            wrote_header: false,
        })
    }

    /// Emits one report as a JSON line tagged `"type":"report"` or as a CSV
    /// row under the summary header.
    pub fn report(&mut self, report: &InequalityReport) -> Result<()> {
        match self.format {
            OutputFormat::Json => {
                let mut value = serde_json::to_value(report)?;
                value
                    .as_object_mut()
                    .expect("report serializes to an object")
                    .insert("type".into(), "report".into());
                writeln!(self.out, "{value}")?;
            }
            OutputFormat::Csv => {
                if !self.wrote_header {
                    writeln!(self.out, "{}", InequalityReport::CSV_HEADER)?;
                    self.wrote_header = true;
                }
                writeln!(self.out, "{}", report.csv_row())?;
            }
        }
        Ok(())
    }

    /// Emits a raw JSON value on its own line (summaries, search results).
    /// In CSV mode the value goes to stderr so the row stream stays clean.
    pub fn json_line(&mut self, value: &serde_json::Value) -> Result<()> {
        match self.format {
            OutputFormat::Json => writeln!(self.out, "{value}")?,
            OutputFormat::Csv => eprintln!("{value}"),
        }
        Ok(())
    }

    /// Emits a plain line (character-table rows).
    pub fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}
