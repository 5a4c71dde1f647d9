use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use hotgraph_core::{
    evaluate_run, generate_stream, parse_edge_list, rank_descending, rbo_ext, read_stream,
    run_stream, write_edge_list, write_stream, DynamicGraph, EvaluationRow, QueryRecord,
    RankVector, RboConfig, RunView, StreamEvent, StreamSpec,
};

use crate::error::{CliError, CliResult};
use crate::manifest::{RunManifest, MANIFEST_FILE};
use crate::rankfile::{read_ranks, write_ranks};
use crate::report::{read_rows, write_rows, EvaluationCsvRow, RecordRow, RECORDS_FILE};

pub const INITIAL_FILE: &str = "initial.txt";
pub const STREAM_FILE: &str = "stream.txt";
pub const FINAL_RANKS_FILE: &str = "final_ranks.txt";
pub const EVALUATION_FILE: &str = "evaluation.csv";
const RANKS_DIR: &str = "ranks";

fn query_ranks_path(run_dir: &Path, query_index: usize) -> PathBuf {
    run_dir
        .join(RANKS_DIR)
        .join(format!("query_{query_index:04}.txt"))
}

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::in_file(path)(e.into())
}

fn read_graph(path: &Path) -> CliResult<DynamicGraph> {
    let file = File::open(path).map_err(io_at(path))?;
    parse_edge_list(BufReader::new(file)).map_err(CliError::in_file(path))
}

fn read_events(path: &Path) -> CliResult<Vec<StreamEvent>> {
    let file = File::open(path).map_err(io_at(path))?;
    read_stream(BufReader::new(file)).map_err(CliError::in_file(path))
}

pub struct GenerateSummary {
    pub withheld: usize,
    pub events: usize,
    pub initial_vertices: usize,
    pub initial_edges: usize,
}

pub fn cmd_generate_stream(
    dataset: &Path,
    spec: &StreamSpec,
    out_dir: &Path,
) -> CliResult<GenerateSummary> {
    let full = read_graph(dataset)?;
    let (initial, events) = generate_stream(&full, spec)?;
    fs::create_dir_all(out_dir).map_err(io_at(out_dir))?;

    let path = out_dir.join(INITIAL_FILE);
    let file = File::create(&path).map_err(io_at(&path))?;
    write_edge_list(&initial, BufWriter::new(file)).map_err(CliError::in_file(&path))?;

    let path = out_dir.join(STREAM_FILE);
    let file = File::create(&path).map_err(io_at(&path))?;
    write_stream(&events, BufWriter::new(file)).map_err(CliError::in_file(&path))?;

    Ok(GenerateSummary {
        withheld: spec.withheld_edges(),
        events: events.len(),
        initial_vertices: initial.vertex_count(),
        initial_edges: initial.edge_count(),
    })
}

pub fn cmd_run(manifest: &RunManifest) -> CliResult<Vec<RecordRow>> {
    let params = manifest.hot_params()?;
    let policy = manifest.policy()?;
    let cfg = manifest.compute()?;
    let rbo_cfg = RboConfig::from(&manifest.rbo);
    rbo_cfg.validate()?;
    manifest.check_paths()?;

    let g0 = read_graph(&manifest.dataset)?;
    let events = read_events(&manifest.stream)?;
    let run = run_stream(g0, &events, params, policy, cfg)?;

    let out = &manifest.out_dir;
    let ranks_dir = out.join(RANKS_DIR);
    fs::create_dir_all(&ranks_dir).map_err(io_at(&ranks_dir))?;
    manifest.save(&out.join(MANIFEST_FILE))?;
    for (record, ranks) in run.records.iter().zip(&run.per_query) {
        write_ranks(&query_ranks_path(out, record.query_index), ranks)?;
    }
    write_ranks(&out.join(FINAL_RANKS_FILE), &run.final_ranks)?;

    let mut rows: Vec<RecordRow> = run.records.iter().map(RecordRow::from_record).collect();
    if let Some(baseline) = &manifest.baseline {
        // Score the persisted ranks so the result agrees with `compare`.
        let evaluation = evaluate_dirs(out, &run.records, baseline, &rbo_cfg)?;
        for (row, eval) in rows.iter_mut().zip(&evaluation) {
            row.rbo = Some(eval.rbo);
            row.speedup = Some(eval.speedup);
        }
    }
    write_rows(&out.join(RECORDS_FILE), &rows)?;
    Ok(rows)
}

fn load_records(run_dir: &Path) -> CliResult<Vec<QueryRecord>> {
    let path = run_dir.join(RECORDS_FILE);
    if !path.exists() {
        return Err(CliError::Data(format!("{} does not exist", path.display())));
    }
    let rows: Vec<RecordRow> = read_rows(&path)?;
    rows.iter().map(RecordRow::to_record).collect()
}

fn load_query_ranks(run_dir: &Path, records: &[QueryRecord]) -> CliResult<Vec<RankVector>> {
    records
        .iter()
        .map(|r| {
            let path = query_ranks_path(run_dir, r.query_index);
            if !path.exists() {
                return Err(CliError::Data(format!(
                    "ranks for query {} missing: {}",
                    r.query_index,
                    path.display()
                )));
            }
            read_ranks(&path)
        })
        .collect()
}

fn evaluate_dirs(
    approx_dir: &Path,
    approx_records: &[QueryRecord],
    exact_dir: &Path,
    cfg: &RboConfig,
) -> CliResult<Vec<EvaluationRow>> {
    let exact_records = load_records(exact_dir)?;
    if exact_records.len() != approx_records.len() {
        return Err(CliError::Data(format!(
            "query count mismatch: {} has {}, {} has {}",
            approx_dir.display(),
            approx_records.len(),
            exact_dir.display(),
            exact_records.len()
        )));
    }
    let approx_ranks = load_query_ranks(approx_dir, approx_records)?;
    let exact_ranks = load_query_ranks(exact_dir, &exact_records)?;
    let rows = evaluate_run(
        RunView {
            records: approx_records,
            ranks: &approx_ranks,
        },
        RunView {
            records: &exact_records,
            ranks: &exact_ranks,
        },
        cfg,
    )
    .map_err(|e| match e {
        hotgraph_core::Error::Config(msg) => CliError::Data(msg),
        other => CliError::Core(other),
    })?;
    Ok(rows)
}

pub fn cmd_compare(
    exact_dir: &Path,
    approx_dir: &Path,
    cfg: &RboConfig,
    out_dir: &Path,
) -> CliResult<Vec<EvaluationRow>> {
    cfg.validate()?;
    let approx_records = load_records(approx_dir)?;
    let rows = evaluate_dirs(approx_dir, &approx_records, exact_dir, cfg)?;
    fs::create_dir_all(out_dir).map_err(io_at(out_dir))?;
    let csv_rows: Vec<EvaluationCsvRow> = rows.iter().map(EvaluationCsvRow::from).collect();
    write_rows(&out_dir.join(EVALUATION_FILE), &csv_rows)?;
    Ok(rows)
}

/// RBO of two rank files. `depth` defaults to the shorter ranking.
pub fn cmd_rbo(a: &Path, b: &Path, p: f64, depth: Option<usize>) -> CliResult<f64> {
    let ranking_a = rank_descending(&read_ranks(a)?);
    let ranking_b = rank_descending(&read_ranks(b)?);
    let k = depth.unwrap_or(ranking_a.len().min(ranking_b.len()));
    Ok(rbo_ext(&ranking_a, &ranking_b, p, k)?)
}
