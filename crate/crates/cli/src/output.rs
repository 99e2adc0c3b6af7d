//! Rendering of command results as aligned tables, JSON or CSV.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One command's result. Every cell is a string, so exact values stay exact.
#[derive(Debug, Serialize)]
pub struct Output {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Output {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Output {
            command: command.into(),
            params: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            status: None,
            reports: None,
            warnings: Vec::new(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.into(), v.to_string());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Table => self.table(),
        })
    }

    fn table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            out += &format!("# {k} = {v}\n");
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                self.rows.iter().map(|r| r[i].chars().count()).chain([self.columns[i].chars().count()]).max().unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out += &line(&self.columns);
        out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
        for r in &self.rows {
            out += &line(r);
        }
        if let Some(s) = &self.status {
            out += &format!("status: {s}\n");
        }
        out
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        for w in &self.warnings {
            eprintln!("warning: {w}");
        }
        let text = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
