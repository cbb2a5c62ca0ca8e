//! Measure files and scalar argument parsing.

use anyhow::{anyhow, Context, Result};
use diskflow::{alpha_star, Alpha, Atom, CircleMeasure, Complex64};
use serde::Deserialize;
use std::path::Path;

/// On-disk measure document: a single `atoms` array, each entry carrying
/// `theta` (radians) and `weight` (nonnegative; the weights must sum to 1
/// within 1e-9 or the loader rejects).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    atoms: Vec<AtomSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomSpec {
    theta: f64,
    weight: f64,
}

pub fn load_measure(path: &Path) -> Result<CircleMeasure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read measure file {}", path.display()))?;
    let parsed: MeasureFile = serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "parse error in {} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    let atoms: Vec<Atom> = parsed
        .atoms
        .iter()
        .map(|a| Atom {
            theta: a.theta,
            weight: a.weight,
        })
        .collect();
    CircleMeasure::renormalized(atoms, diskflow::measure::LOADER_SUM_TOL)
        .map_err(|e| anyhow!("invalid measure in {}: {e}", path.display()))
}

/// Accepts a float literal or the keyword `astar` for the exact top of the
/// generator range.
pub fn parse_alpha_value(s: &str) -> std::result::Result<f64, String> {
    if s.eq_ignore_ascii_case("astar") || s.eq_ignore_ascii_case("alpha-star") {
        return Ok(alpha_star());
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

pub fn alpha_arg(value: f64) -> Result<Alpha> {
    Alpha::new(value).map_err(|e| anyhow!("{e}"))
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let mut parts = s.splitn(2, ',');
    let re = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad real part: {e}"))?;
    let im = match parts.next() {
        Some(part) => part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad imaginary part: {e}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}
