//! Machine-readable reports. Ratios are exact integer pairs; an infinite
//! ratio is `1/0` and an infinite codimension is the string `"inf"`.

use std::io::Write;
use std::path::Path;

use jetlct_core::lct::{Codim, LctReport, LctRow, Method, RowStatus, Threshold};
use serde::Serialize;

use crate::idealfile::IdealFile;

pub const SCHEMA_VERSION: u32 = 1;

/// The bundled JSON schema for [`ReportDocument`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    pub parameters: serde_json::Value,
    pub reports: Vec<ReportRecord>,
    pub verdicts: Vec<VerdictRecord>,
    pub timing: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub field: String,
    pub vars: Vec<String>,
    pub generators: Vec<GeneratorEcho>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorEcho {
    pub source: String,
    pub parsed: String,
    pub vanishes: bool,
}

impl InputEcho {
    pub fn new(path: &Path, file: &IdealFile) -> Self {
        Self {
            path: path.display().to_string(),
            field: file.field().to_string(),
            vars: file.ring.names().to_vec(),
            generators: file
                .generators
                .iter()
                .zip(&file.sources)
                .map(|(g, s)| GeneratorEcho { source: s.clone(), parsed: g.to_string(), vanishes: g.is_zero() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl From<Threshold> for Ratio {
    fn from(t: Threshold) -> Self {
        match t {
            Threshold::Finite(q) => Ratio { num: *q.numer(), den: *q.denom() },
            Threshold::Infinite => Ratio { num: 1, den: 0 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CodimValue {
    Finite(u64),
    Infinite(&'static str),
}

impl From<Codim> for CodimValue {
    fn from(c: Codim) -> Self {
        match c {
            Codim::Finite(n) => CodimValue::Finite(n),
            Codim::Infinite => CodimValue::Infinite("inf"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowRecord {
    pub m: usize,
    pub dim: Option<i64>,
    pub codim: Option<CodimValue>,
    pub ratio: Option<Ratio>,
    pub status: &'static str,
    pub method: &'static str,
    pub elapsed_ms: f64,
}

impl From<&LctRow> for RowRecord {
    fn from(r: &LctRow) -> Self {
        Self {
            m: r.m,
            dim: r.dim,
            codim: r.codim.map(Into::into),
            ratio: r.ratio.map(Into::into),
            status: match r.status {
                RowStatus::Done => "done",
                RowStatus::Exhausted(_) => "timeout",
            },
            method: match r.method {
                Method::Groebner => "groebner",
                Method::SmoothLocus => "smooth-locus",
                Method::Trivial => "trivial",
            },
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub label: String,
    pub field: String,
    pub ideal: String,
    pub mode: String,
    pub m_max: usize,
    pub rows: Vec<RowRecord>,
    pub running_min: Option<Ratio>,
    pub attained_at: Option<usize>,
    pub diagnostic: Option<String>,
}

impl ReportRecord {
    pub fn new(label: impl Into<String>, report: &LctReport) -> Self {
        Self {
            label: label.into(),
            field: report.base.field().to_string(),
            ideal: report.base.to_string(),
            mode: report.mode.to_string(),
            m_max: report.m_max,
            rows: report.rows.iter().map(Into::into).collect(),
            running_min: report.estimate().map(Into::into),
            attained_at: report.attained_at,
            diagnostic: report.diagnostic.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub name: String,
    pub pass: bool,
    pub partial: bool,
    pub details: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub jobs: usize,
}

pub fn write_json(path: &Path, doc: &ReportDocument) -> std::io::Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut f, doc)?;
    writeln!(f)?;
    f.flush()
}

/// `m,codim,ratio_num,ratio_den`, one row per level. Unknown or infinite
/// codimensions leave the cell empty; an infinite ratio is `1,0`.
pub fn write_csv(path: &Path, report: &LctReport) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["m", "codim", "ratio_num", "ratio_den"])?;
    for row in &report.rows {
        let codim = match row.codim {
            Some(Codim::Finite(c)) => c.to_string(),
            _ => String::new(),
        };
        let (num, den) = match row.ratio.map(Ratio::from) {
            Some(r) => (r.num.to_string(), r.den.to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([row.m.to_string(), codim, num, den])?;
    }
    w.flush()?;
    Ok(())
}
