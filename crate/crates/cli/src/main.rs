//! `hotgraph`: generate update streams, replay them through the engine and
//! score approximate runs against exact ones.
//!
//! Exit status is 0 on success, 1 for usage errors and 2 for data errors.

mod commands;
mod error;
mod manifest;
mod rankfile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hotgraph_core::{RboConfig, StreamSpec};

use crate::error::{CliError, CliResult};
use crate::manifest::{DeltaSeedArg, PolicyArg, RboSettings, RunManifest};

const OUT_DIR_ENV: &str = "HOTGRAPH_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "hotgraph",
    version,
    about = "Streaming PageRank with hot-vertex summaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Withhold edges from a dataset and write them back as an update stream.
    GenerateStream(GenerateArgs),
    /// Replay a stream through the engine and write per-query reports.
    Run(RunArgs),
    /// Score an approximate run directory against an exact one.
    Compare(CompareArgs),
    /// Print the RBO of two rank files.
    Rbo(RboArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Edge list with one `u v` pair per line.
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, default_value_t = 800)]
    chunk_size: usize,
    #[arg(long, default_value_t = 0.2)]
    removal_fraction: f64,
    #[arg(long, default_value_t = 50)]
    query_count: usize,
    /// Permute the withheld edges before chunking.
    #[arg(long)]
    shuffle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RboFlags {
    /// RBO persistence.
    #[arg(long = "rbo-p", default_value_t = 0.98)]
    p: f64,
    /// Fraction of vertices compared on ordinary queries.
    #[arg(long, default_value_t = 0.1)]
    depth_fraction: f64,
    /// Compare full rankings every this many queries.
    #[arg(long, default_value_t = 10)]
    full_depth_period: usize,
}

impl RboFlags {
    fn settings(&self) -> RboSettings {
        RboSettings {
            p: self.p,
            depth_fraction: self.depth_fraction,
            full_depth_period: self.full_depth_period,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Load every setting from a manifest written by an earlier run.
    /// Only the output directory can still be overridden.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Initial graph (the `initial.txt` written by generate-stream).
    #[arg(long, required_unless_present = "manifest")]
    dataset: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    stream: Option<PathBuf>,
    /// Degree change ratio threshold.
    #[arg(long, default_value_t = 0.2)]
    r: f64,
    /// Neighborhood expansion depth.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Score-driven expansion bound.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = DeltaSeedArg::Neighborhood)]
    delta_seed: DeltaSeedArg,
    #[arg(long, value_enum, default_value_t = PolicyArg::Approximate)]
    policy: PolicyArg,
    /// Exact refresh period for `--policy auto`.
    #[arg(long)]
    refresh_period: Option<usize>,
    #[arg(long, default_value_t = 0.85)]
    beta: f64,
    #[arg(long, default_value_t = 30)]
    iterations: usize,
    #[command(flatten)]
    rbo: RboFlags,
    /// Seed the stream was generated with, recorded in the manifest.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run directory of an exact run; fills the rbo and speedup columns.
    #[arg(long)]
    baseline: Option<PathBuf>,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

impl RunArgs {
    fn into_manifest(self) -> CliResult<RunManifest> {
        if let Some(path) = &self.manifest {
            let mut m = RunManifest::load(path)?;
            if let Some(out) = self.out_dir {
                m.out_dir = out;
            }
            return Ok(m);
        }
        let (Some(dataset), Some(stream)) = (self.dataset, self.stream) else {
            return Err(CliError::Usage(
                "--dataset and --stream are required".into(),
            ));
        };
        Ok(RunManifest {
            dataset,
            stream,
            r: self.r,
            n: self.n,
            delta: self.delta,
            delta_seed: self.delta_seed,
            policy: self.policy,
            refresh_period: self.refresh_period,
            beta: self.beta,
            iterations: self.iterations,
            rbo: self.rbo.settings(),
            out_dir: self
                .out_dir
                .unwrap_or_else(|| PathBuf::from("hotgraph-run")),
            seed: self.seed,
            baseline: self.baseline,
        })
    }
}

#[derive(Args)]
struct CompareArgs {
    /// Run directory of the exact run.
    #[arg(long)]
    exact: PathBuf,
    /// Run directory of the approximate run.
    #[arg(long)]
    approx: PathBuf,
    #[command(flatten)]
    rbo: RboFlags,
    /// Where evaluation.csv is written.
    #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RboArgs {
    ranks_a: PathBuf,
    ranks_b: PathBuf,
    #[arg(long, default_value_t = 0.98)]
    p: f64,
    /// Comparison depth. Defaults to the length of the shorter ranking.
    #[arg(long)]
    depth: Option<usize>,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::GenerateStream(a) => {
            let spec = StreamSpec {
                chunk_size: a.chunk_size,
                removal_fraction: a.removal_fraction,
                query_count: a.query_count,
                shuffle: a.shuffle,
                rng_seed: a.seed,
            };
            let s = commands::cmd_generate_stream(&a.dataset, &spec, &a.out_dir)?;
            println!("withheld {} edges", s.withheld);
            println!(
                "initial graph: {} vertices, {} edges; stream: {} events",
                s.initial_vertices, s.initial_edges, s.events
            );
        }
        Command::Run(a) => {
            let manifest = a.into_manifest()?;
            let rows = commands::cmd_run(&manifest)?;
            println!(
                "{} queries answered; mean edge fraction {:.4}; reports in {}",
                rows.len(),
                mean(rows.iter().map(|r| r.edge_fraction)),
                manifest.out_dir.display()
            );
            if manifest.baseline.is_some() {
                println!(
                    "mean rbo {:.6}; mean speedup {:.3}",
                    mean(rows.iter().filter_map(|r| r.rbo)),
                    mean(rows.iter().filter_map(|r| r.speedup))
                );
            }
        }
        Command::Compare(a) => {
            let cfg = RboConfig::from(&a.rbo.settings());
            let rows = commands::cmd_compare(&a.exact, &a.approx, &cfg, &a.out_dir)?;
            println!(
                "{} queries; mean rbo {:.6}; mean speedup {:.3}; mean edge fraction {:.4}",
                rows.len(),
                mean(rows.iter().map(|r| r.rbo)),
                mean(rows.iter().map(|r| r.speedup)),
                mean(rows.iter().map(|r| r.edge_fraction))
            );
        }
        Command::Rbo(a) => {
            let value = commands::cmd_rbo(&a.ranks_a, &a.ranks_b, a.p, a.depth)?;
            println!("{value:.6}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
