//! Result files: one CSV series per algorithm and a JSON summary.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::evaluation::{Certificate, MetricPoint, MetricSeries, Provenance};
use crate::matroid::MatroidConstraint;
use crate::solvers::{Algorithm, Guarantees};

pub const SCHEMA_VERSION: u32 = 1;

/// One CSV row: a metric point with its wall-clock time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub point: MetricPoint,
    pub wall_ms: f64,
}

/// Reals are printed in scientific notation with 17 significant digits so
/// that parsing recovers them exactly.
fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(with_opt: bool) -> Vec<&'static str> {
    let mut h = vec!["t", "gamma_t", "phi", "error_vs_final"];
    if with_opt {
        h.push("error_vs_opt");
    }
    h.push("wall_ms");
    h
}

/// Columns `t,gamma_t,phi,error_vs_final[,error_vs_opt],wall_ms`; the
/// `error_vs_opt` column appears when `with_opt` is set.
pub fn series_csv(rows: &[SeriesRow], with_opt: bool) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header(with_opt)).expect("write to memory");
    for r in rows {
        let mut rec = vec![
            r.point.t.to_string(),
            real(r.point.gamma),
            real(r.point.phi),
            real(r.point.error_vs_final),
        ];
        if with_opt {
            rec.push(real(r.point.error_vs_opt.unwrap_or(f64::NAN)));
        }
        rec.push(real(r.wall_ms));
        w.write_record(&rec).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

/// Pairs a series with per-point times (zero where absent).
pub fn rows_from(series: &MetricSeries, wall_ms: &[f64]) -> Vec<SeriesRow> {
    series
        .points
        .iter()
        .enumerate()
        .map(|(i, &point)| SeriesRow {
            point,
            wall_ms: wall_ms.get(i).copied().unwrap_or(0.0),
        })
        .collect()
}

pub fn write_series_csv(path: &Path, rows: &[SeriesRow], with_opt: bool) -> Result<()> {
    std::fs::write(path, series_csv(rows, with_opt)).map_err(|e| Error::io(path, e))
}

/// Reads back a CSV written by [`series_csv`].
pub fn parse_series_csv(text: &str) -> Result<Vec<SeriesRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Malformed {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_string)
        .collect();
    let with_opt = if found == header(true) {
        true
    } else if found == header(false) {
        false
    } else {
        return Err(Error::Malformed {
            line: 1,
            message: format!("unexpected header '{}'", found.join(",")),
        });
    };
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Malformed {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| Error::Malformed { line, message };
        let num = |k: usize| {
            record[k]
                .parse::<f64>()
                .map_err(|_| bad(format!("bad number '{}'", &record[k])))
        };
        let t = record[0]
            .parse::<usize>()
            .map_err(|_| bad(format!("bad t '{}'", &record[0])))?;
        rows.push(SeriesRow {
            point: MetricPoint {
                t,
                gamma: num(1)?,
                phi: num(2)?,
                error_vs_final: num(3)?,
                error_vs_opt: if with_opt { Some(num(4)?) } else { None },
            },
            wall_ms: num(record.len() - 1)?,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub objective: String,
    pub dim: usize,
    pub ground_size: usize,
    pub constraint: MatroidConstraint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptSummary {
    pub value: f64,
    pub iterations: usize,
    pub approximate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub horizon: usize,
    /// SHA-256 of the little-endian bytes of `x_sol`.
    pub x_sol_digest: String,
    /// SHA-256 of the solution and trace.
    pub trace_digest: String,
    /// Worst-case value at `x_sol`.
    pub phi: f64,
    pub phi_provenance: Provenance,
    pub guarantees: Guarantees,
    pub certificate: Option<Certificate>,
    /// Greedy recommendation utility on the perturbed ratings.
    pub attacked_utility: Option<f64>,
    /// Series file name, relative to the output directory.
    pub csv: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: u32,
    pub config: ExperimentConfig,
    pub instance: InstanceSummary,
    pub opt_reference: Option<OptSummary>,
    /// Greedy recommendation utility on the unperturbed ratings.
    pub baseline_utility: Option<f64>,
    pub runs: Vec<RunSummary>,
}

impl Summary {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let s: Summary = serde_json::from_str(&text).map_err(|e| Error::Data {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if s.schema != SCHEMA_VERSION {
            return Err(Error::Data {
                path: path.to_path_buf(),
                message: format!("unsupported schema version {}", s.schema),
            });
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}
