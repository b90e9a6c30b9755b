//! Ranking reports and their JSON and CSV forms.
//!
//! Numbers print with exactly six decimals, JSON keys are sorted, and lines end in LF,
//! so a fixed input always produces the same bytes. Infinite times appear as `inf` in
//! CSV and as `null` with `"infinite": true` in JSON.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use rzf_core::{EptValue, WeightedDigraph};
use serde::ser::Error as _;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Usage(format!("unknown format `{other}` (json, csv)"))),
        }
    }
}

pub fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

fn fixed<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawValue::from_string(fixed6(*x)).map_err(S::Error::custom)?.serialize(s)
}

fn fixed_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => fixed(x, s),
        None => s.serialize_none(),
    }
}

/// One row of a ranking. Fields are declared in key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRank {
    #[serde(serialize_with = "fixed_opt")]
    pub ept: Option<f64>,
    pub infinite: bool,
    #[serde(serialize_with = "fixed")]
    pub inverse_ept: f64,
    pub label: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub limit: usize,
    pub method: Method,
    pub runs: Option<u64>,
    pub seed: Option<u64>,
    /// Sorted by time, infinite entries last.
    pub vertices: Vec<VertexRank>,
}

impl RankReport {
    /// Ranks singleton times; equal values at six decimals share the smaller rank.
    pub fn new(
        g: &WeightedDigraph,
        epts: &[EptValue],
        method: Method,
        limit: usize,
        runs: Option<u64>,
        seed: Option<u64>,
    ) -> Self {
        let key = |e: &EptValue| e.finite().map(|x| (x * 1e6).round());
        let mut order: Vec<usize> = (0..epts.len()).collect();
        order.sort_by(|&a, &b| match (key(&epts[a]), key(&epts[b])) {
            (Some(x), Some(y)) => x.total_cmp(&y).then(a.cmp(&b)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.cmp(&b),
        });
        let mut vertices: Vec<VertexRank> = Vec::with_capacity(order.len());
        for (pos, &v) in order.iter().enumerate() {
            let rank = match vertices.last() {
                Some(prev) if key(&epts[order[pos - 1]]) == key(&epts[v]) => prev.rank,
                _ => pos + 1,
            };
            vertices.push(VertexRank {
                ept: epts[v].finite(),
                infinite: !epts[v].is_finite(),
                inverse_ept: epts[v].inverse(),
                label: g.label(v),
                rank,
            });
        }
        RankReport { limit, method, runs, seed, vertices }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Data(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        wtr.write_record(["label", "ept", "inverse_ept", "rank"])?;
        for v in &self.vertices {
            let ept = v.ept.map_or_else(|| "inf".to_string(), fixed6);
            wtr.write_record([v.label.clone(), ept, fixed6(v.inverse_ept), v.rank.to_string()])?;
        }
        let bytes = wtr.into_inner().map_err(|e| CliError::io("csv", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            let ept = v.ept.map_or_else(|| "inf".to_string(), fixed6);
            writeln!(f, "{:>4}  {:<24} {:>14}  {}", v.rank, v.label, ept, fixed6(v.inverse_ept))?;
        }
        Ok(())
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p.display().to_string(), e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e)),
    }
}
