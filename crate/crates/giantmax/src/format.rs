//! File formats: the distribution JSON schema, the debugging edge-list dump,
//! and number rounding shared by every output format.
//!
//! Distribution files look like
//!
//! ```json
//! {"type":"weight_atoms","atoms":[{"x":1.756,"p":0.569},{"x":0.0,"p":0.431}]}
//! {"type":"degree_pmf","pmf":[0.26,0.0,0.72,0.02]}
//! ```
//!
//! where the pmf index is the degree.

use std::io::{BufRead, Write};
use std::path::Path;

use giantmax_core::{
    DegreeDistribution, Distribution, GraphModel, GraphSample, WeightDistribution,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Result};

/// Significant digits of every number in JSON and CSV output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits in human-readable tables.
pub const TABLE_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomRecord {
    pub x: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionRecord {
    WeightAtoms { atoms: Vec<AtomRecord> },
    DegreePmf { pmf: Vec<f64> },
}

impl DistributionRecord {
    pub fn into_distribution(self) -> Result<Distribution> {
        Ok(match self {
            DistributionRecord::WeightAtoms { atoms } => Distribution::Weight(
                WeightDistribution::new(atoms.into_iter().map(|a| (a.x, a.p)))?,
            ),
            DistributionRecord::DegreePmf { pmf } => {
                Distribution::Degree(DegreeDistribution::new(pmf)?)
            }
        })
    }
}

impl From<&Distribution> for DistributionRecord {
    fn from(d: &Distribution) -> Self {
        match d {
            Distribution::Weight(w) => DistributionRecord::WeightAtoms {
                atoms: w
                    .atoms()
                    .iter()
                    .map(|&(x, p)| AtomRecord { x, p })
                    .collect(),
            },
            Distribution::Degree(d) => DistributionRecord::DegreePmf {
                pmf: d.pmf().to_vec(),
            },
        }
    }
}

pub fn parse_distribution(text: &str) -> Result<Distribution> {
    serde_json::from_str::<DistributionRecord>(text)?.into_distribution()
}

pub fn read_distribution(path: &Path) -> Result<Distribution> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_distribution(&text)
}

/// Compact JSON in the distribution schema.
pub fn distribution_to_json(d: &Distribution) -> String {
    serde_json::to_string(&DistributionRecord::from(d)).expect("plain data serializes")
}

/// `x` rounded to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Rounds every floating-point number inside `value` in place.
pub fn round_json(value: &mut Value, digits: usize) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *value = serde_json::Number::from_f64(round_sig(x, digits))
                    .map(Value::Number)
                    .unwrap_or(Value::Null);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_json(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_json(v, digits)),
        _ => {}
    }
}

/// Text rendering of one scalar for CSV cells and tables.
pub fn render_scalar(value: &Value, digits: usize) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => {
            let mut v = other.clone();
            round_json(&mut v, digits);
            v.to_string()
        }
    }
}

/// Writes `n=<count>` followed by one `u v` line per edge.
pub fn write_edge_list<W: Write>(g: &GraphSample, mut out: W) -> std::io::Result<()> {
    writeln!(out, "n={}", g.n)?;
    for &(u, v) in &g.edges {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

/// Reads the format of [`write_edge_list`]. The model tag and seed are not
/// stored and must be supplied.
pub fn read_edge_list<R: BufRead>(input: R, model: GraphModel, seed: u64) -> Result<GraphSample> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing header".into()))?
        .map_err(|e| Error::EdgeList(e.to_string()))?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::EdgeList(format!("bad header {header:?}")))?;
    let mut edges = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::EdgeList(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace().map(str::parse::<u32>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::EdgeList(format!("line {}: {line:?}", i + 2))),
        }
    }
    Ok(GraphSample::from_edges(n, edges, model, seed)?)
}
