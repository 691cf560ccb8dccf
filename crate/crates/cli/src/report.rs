//! Run reports and their CSV, text and JSON emitters.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

/// Parameters, columns, rows and verdict: everything but the timing.
pub type ReportValues<'a> = (&'a BTreeMap<String, String>, &'a [String], &'a [Vec<String>], Option<bool>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Overall verdict, for commands that check something.
    pub passed: Option<bool>,
    pub elapsed_ms: u64,
    pub version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Text,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => bail!("unknown format {other:?} (csv, text, json)"),
        }
    }
}

impl RunReport {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            passed: None,
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Everything except the timing, for determinism checks.
    pub fn values(&self) -> ReportValues<'_> {
        (&self.parameters, &self.columns, &self.rows, self.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
        }
    }

    /// Header row then one line per row. Fields never contain commas except
    /// polynomial literals, which are quoted.
    pub fn to_csv(&self) -> String {
        let line = |cells: &[String]| {
            cells
                .iter()
                .map(|c| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = line(&self.columns) + "\n";
        for r in &self.rows {
            out += &line(r);
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "{k}: {v}").unwrap();
        }
        writeln!(out, "version: {}", self.version).unwrap();
        writeln!(out, "elapsed_ms: {}", self.elapsed_ms).unwrap();
        if let Some(p) = self.passed {
            writeln!(out, "passed: {p}").unwrap();
        }
        out.push('\n');
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out += &line(&self.columns);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }
}
