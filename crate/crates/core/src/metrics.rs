//! Accuracy and savings metrics for approximate runs.
//!
//! Accuracy is measured with extrapolated rank-biased overlap (Webber, Moffat
//! and Zobel, 2010) between the approximate and the exact ranking of each
//! query. At evaluation depth `k`, with `X_d` the size of the overlap of the
//! two depth-`d` prefixes:
//!
//! ```text
//! RBO_ext = (X_k / k) * p^k + ((1 - p) / p) * sum_{d=1..k} (X_d / d) * p^d
//! ```

use std::collections::HashSet;
use std::time::Duration;

use crate::compute::{rank_descending, RankVector};
use crate::engine::{QueryRecord, Strategy};
use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RboConfig {
    /// Persistence, in `(0, 1)`.
    pub p: f64,
    /// Fraction of `|V|` compared on ordinary queries.
    pub depth_fraction: f64,
    /// Every this many queries the full ranking is compared.
    pub full_depth_period: usize,
}

impl Default for RboConfig {
    fn default() -> Self {
        Self {
            p: 0.98,
            depth_fraction: 0.1,
            full_depth_period: 10,
        }
    }
}

impl RboConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::Config(format!(
                "p must lie in (0, 1), got {}",
                self.p
            )));
        }
        if !(self.depth_fraction > 0.0 && self.depth_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "depth fraction must lie in (0, 1], got {}",
                self.depth_fraction
            )));
        }
        if self.full_depth_period == 0 {
            return Err(Error::Config("full depth period must be positive".into()));
        }
        Ok(())
    }

    /// Comparison depth for a query over `vertex_count` vertices.
    pub fn depth_for(&self, query_index: usize, vertex_count: usize) -> usize {
        if query_index.is_multiple_of(self.full_depth_period) {
            vertex_count
        } else {
            ((self.depth_fraction * vertex_count as f64).ceil() as usize)
                .clamp(1, vertex_count.max(1))
        }
    }
}

/// Extrapolated RBO of the depth-`k` prefixes of `list_a` and `list_b`.
pub fn rbo_ext(list_a: &[VertexId], list_b: &[VertexId], p: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Config("RBO depth must be positive".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Config(format!("p must lie in (0, 1), got {p}")));
    }
    if k > list_a.len() || k > list_b.len() {
        return Err(Error::Config(format!(
            "RBO depth {k} exceeds list lengths {} and {}",
            list_a.len(),
            list_b.len()
        )));
    }
    let mut seen_a = HashSet::with_capacity(k);
    let mut seen_b = HashSet::with_capacity(k);
    let mut overlap = 0usize;
    let mut weighted = 0.0;
    let mut weight = 1.0;
    let mut identical = true;
    for (&a, &b) in list_a[..k].iter().zip(&list_b[..k]) {
        if !seen_a.insert(a) || !seen_b.insert(b) {
            return Err(Error::Integrity(
                "ranking contains duplicate vertices".into(),
            ));
        }
        if a == b {
            overlap += 1;
        } else {
            overlap += usize::from(seen_b.contains(&a)) + usize::from(seen_a.contains(&b));
        }
        let depth = seen_a.len();
        identical &= overlap == depth;
        weight *= p;
        weighted += overlap as f64 / depth as f64 * weight;
    }
    if identical {
        return Ok(1.0);
    }
    let value = overlap as f64 / k as f64 * weight + (1.0 - p) / p * weighted;
    Ok(value.clamp(0.0, 1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationRow {
    pub query_index: usize,
    pub strategy: Strategy,
    pub depth: usize,
    pub rbo: f64,
    pub speedup: f64,
    pub edge_fraction: f64,
}

/// Records and per-query rankings of one run over a stream.
#[derive(Clone, Copy, Debug)]
pub struct RunView<'a> {
    pub records: &'a [QueryRecord],
    pub ranks: &'a [RankVector],
}

pub fn speedup(exact: Duration, approx: Duration) -> f64 {
    let approx = approx.max(Duration::from_nanos(1));
    exact.as_secs_f64() / approx.as_secs_f64()
}

pub fn edge_fraction(summary_edges: usize, total_edges: usize) -> f64 {
    if total_edges == 0 {
        0.0
    } else {
        summary_edges as f64 / total_edges as f64
    }
}

/// Scores an approximate run against the exact run over the same stream.
pub fn evaluate_run(
    approx: RunView<'_>,
    exact: RunView<'_>,
    cfg: &RboConfig,
) -> Result<Vec<EvaluationRow>> {
    cfg.validate()?;
    if approx.records.len() != exact.records.len()
        || approx.ranks.len() != approx.records.len()
        || exact.ranks.len() != exact.records.len()
    {
        return Err(Error::Config(format!(
            "runs answered different numbers of queries ({} approximate, {} exact)",
            approx.records.len(),
            exact.records.len()
        )));
    }
    let mut rows = Vec::with_capacity(approx.records.len());
    for i in 0..approx.records.len() {
        let (ar, er) = (&approx.records[i], &exact.records[i]);
        if ar.query_index != er.query_index {
            return Err(Error::Config(format!(
                "query {} paired with query {}",
                ar.query_index, er.query_index
            )));
        }
        let ranking_a = rank_descending(&approx.ranks[i]);
        let ranking_e = rank_descending(&exact.ranks[i]);
        let depth = cfg
            .depth_for(ar.query_index, exact.ranks[i].len())
            .min(ranking_a.len())
            .min(ranking_e.len());
        rows.push(EvaluationRow {
            query_index: ar.query_index,
            strategy: ar.strategy,
            depth,
            rbo: rbo_ext(&ranking_a, &ranking_e, cfg.p, depth)?,
            speedup: speedup(er.elapsed_total, ar.elapsed_total),
            edge_fraction: edge_fraction(ar.summary_edges, ar.total_edges),
        });
    }
    Ok(rows)
}
