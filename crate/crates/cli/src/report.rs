//! CSV reports. Floats are written in shortest round-trip form, so every
//! column parses back to the value that was written.

use std::path::Path;
use std::time::Duration;

use hotgraph_core::metrics::edge_fraction;
use hotgraph_core::{EvaluationRow, QueryRecord, Strategy};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const RECORDS_FILE: &str = "records.csv";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub query_index: usize,
    pub strategy: String,
    pub elapsed_total_ms: f64,
    pub elapsed_apply_ms: f64,
    pub elapsed_summary_ms: f64,
    pub elapsed_compute_ms: f64,
    pub hot_count: usize,
    pub summary_edges: usize,
    pub total_edges: usize,
    pub rbo: Option<f64>,
    pub speedup: Option<f64>,
    pub edge_fraction: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn from_ms(ms: f64) -> Duration {
    Duration::from_secs_f64(ms.max(0.0) / 1e3)
}

impl RecordRow {
    pub fn from_record(r: &QueryRecord) -> Self {
        Self {
            query_index: r.query_index,
            strategy: r.strategy.to_string(),
            elapsed_total_ms: ms(r.elapsed_total),
            elapsed_apply_ms: ms(r.elapsed_apply),
            elapsed_summary_ms: ms(r.elapsed_summary),
            elapsed_compute_ms: ms(r.elapsed_compute),
            hot_count: r.hot_count,
            summary_edges: r.summary_edges,
            total_edges: r.total_edges,
            rbo: None,
            speedup: None,
            edge_fraction: edge_fraction(r.summary_edges, r.total_edges),
        }
    }

    /// Rebuilds the record. The vertex count is not part of the report and
    /// comes back as zero.
    pub fn to_record(&self) -> CliResult<QueryRecord> {
        let strategy: Strategy = self
            .strategy
            .parse()
            .map_err(|e| CliError::Data(format!("query {}: {e}", self.query_index)))?;
        Ok(QueryRecord {
            query_index: self.query_index,
            strategy,
            elapsed_total: from_ms(self.elapsed_total_ms),
            elapsed_apply: from_ms(self.elapsed_apply_ms),
            elapsed_summary: from_ms(self.elapsed_summary_ms),
            elapsed_compute: from_ms(self.elapsed_compute_ms),
            hot_count: self.hot_count,
            summary_edges: self.summary_edges,
            total_edges: self.total_edges,
            total_vertices: 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationCsvRow {
    pub query_index: usize,
    pub strategy: String,
    pub depth: usize,
    pub rbo: f64,
    pub speedup: f64,
    pub edge_fraction: f64,
}

impl From<&EvaluationRow> for EvaluationCsvRow {
    fn from(r: &EvaluationRow) -> Self {
        Self {
            query_index: r.query_index,
            strategy: r.strategy.to_string(),
            depth: r.depth,
            rbo: r.rbo,
            speedup: r.speedup,
            edge_fraction: r.edge_fraction,
        }
    }
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::in_file(path)(e.into()))?;
    Ok(())
}

pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<Result<Vec<T>, _>>()?;
    Ok(rows)
}
