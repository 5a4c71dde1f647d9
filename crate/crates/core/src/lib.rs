//! Streaming graph engine that answers PageRank queries over an evolving
//! directed graph, either exactly or on a summary graph in which every
//! vertex outside a small hot set is fused into one frozen "big vertex".
//!
//! The pieces, bottom-up:
//!
//! - [`graph`]: the mutable edge set with out/in adjacency and degree snapshots.
//! - [`stream`]: edge-list datasets, stream files and seeded stream generation.
//! - [`hotset`]: selection of the hot vertices from degree changes, neighborhood
//!   expansion and score-driven expansion.
//! - [`summary`]: the summary graph with collapsed boundary inflow.
//! - [`compute`]: the vertex-centric PageRank kernel, exact and summarized.
//! - [`engine`]: the query loop that buffers updates and picks a strategy.
//! - [`metrics`]: rank-biased overlap, speedup and edge-savings accounting.

pub mod compute;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hotset;
pub mod metrics;
pub mod stream;
pub mod summary;

pub use compute::{
    pagerank_exact, pagerank_exact_warm, pagerank_summarized, rank_descending, run_exact,
    run_summarized, ComputeConfig, MessageAggregator, PageRankFunction, RankVector,
};
pub use engine::{
    apply_updates, decide_strategy, run_stream, AppliedUpdates, Engine, PolicyMode, QueryOutcome,
    QueryRecord, Strategy, StrategyPolicy, StreamRun, UpdateBuffer,
};
pub use error::{Error, Result};
pub use graph::{DegreeSnapshot, DynamicGraph, VertexId};
pub use hotset::{select_hot_set, DeltaSeed, HotSet, HotSetParams};
pub use metrics::{evaluate_run, rbo_ext, EvaluationRow, RboConfig, RunView};
pub use stream::{
    generate_stream, parse_edge_list, read_stream, write_edge_list, write_stream, StreamEvent,
    StreamSpec,
};
pub use summary::{build_summary, summary_edge_count, IntraEdge, SummaryGraph};
