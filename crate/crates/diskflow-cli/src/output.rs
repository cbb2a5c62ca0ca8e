//! Rendering of reports and tables as aligned text, CSV, or JSON.

use anyhow::{Context, Result};
use clap::ValueEnum;
use diskflow::VerificationReport;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Fixed-precision float rendering shared by CSV output and fixtures;
/// identical inputs must yield byte-identical documents.
pub fn num(x: f64) -> String {
    format!("{x:.15e}")
}

fn quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub struct TableDoc {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: serde_json::Value,
    /// Optional trailing summary line for the aligned-table rendering.
    pub footer: Option<String>,
}

impl TableDoc {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                let mut out = String::new();
                let line = |cells: Vec<String>, widths: &[usize]| -> String {
                    cells
                        .iter()
                        .zip(widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                out.push_str(&line(
                    self.headers.iter().map(|h| h.to_string()).collect(),
                    &widths,
                ));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&line(row.clone(), &widths));
                    out.push('\n');
                }
                if let Some(footer) = &self.footer {
                    out.push_str(footer);
                    out.push('\n');
                }
                out
            }
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.headers.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| quote(c)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.json)
                    .expect("report serialization cannot fail");
                out.push('\n');
                out
            }
        }
    }
}

pub fn report_doc(report: &VerificationReport) -> TableDoc {
    let rows = report
        .claims
        .iter()
        .map(|c| {
            vec![
                c.claim.clone(),
                c.params.clone(),
                num(c.measured),
                num(c.tolerance),
                if c.pass { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let failed = report.claims.iter().filter(|c| !c.pass).count();
    TableDoc {
        headers: vec!["claim", "params", "measured", "tolerance", "verdict"],
        rows,
        json: serde_json::to_value(report).expect("report serialization cannot fail"),
        footer: Some(format!(
            "suite {}: {} ({} claims, {} failed)",
            report.suite,
            if report.passed { "PASS" } else { "FAIL" },
            report.claims.len(),
            failed
        )),
    }
}

/// Rows of the constants table; `short` precision is only for the aligned
/// rendering, CSV keeps full precision for fixture diffing.
pub fn constants_doc(rows: &[crate::ConstantsRow]) -> TableDoc {
    TableDoc {
        headers: vec![
            "alpha",
            "k_closed",
            "k_numeric",
            "b_normalized",
            "theta_argmax",
            "generator_margin",
        ],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    num(r.alpha),
                    num(r.k_closed),
                    num(r.k_numeric),
                    num(r.b_normalized),
                    num(r.theta_argmax),
                    num(r.generator_margin),
                ]
            })
            .collect(),
        json: serde_json::to_value(rows).expect("row serialization cannot fail"),
        footer: None,
    }
}

pub fn write_out(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
