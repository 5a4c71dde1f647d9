//! Datasets, stream files and stream generation.
//!
//! Datasets are plain edge lists, one `u v` pair per line, with `#` or `%`
//! comment lines. Stream files hold one event per line: `A u v` (add),
//! `R u v` (remove) or `Q` (query).
//!
//! Generated streams are seeded with [`ChaCha8Rng::seed_from_u64`], so a
//! given dataset and [`StreamSpec`] always produce the same stream.

use std::io::{BufRead, Write};

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamEvent {
    Add(VertexId, VertexId),
    Remove(VertexId, VertexId),
    Query,
}

impl StreamEvent {
    pub fn edge(&self) -> Option<(VertexId, VertexId)> {
        match *self {
            StreamEvent::Add(u, v) | StreamEvent::Remove(u, v) => Some((u, v)),
            StreamEvent::Query => None,
        }
    }
}

/// Shape of a generated stream.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamSpec {
    /// Edges added before each query.
    pub chunk_size: usize,
    /// Removals per chunk, as a fraction of `chunk_size` (rounded down).
    pub removal_fraction: f64,
    pub query_count: usize,
    /// Permute the additions once before cutting them into chunks.
    pub shuffle: bool,
    pub rng_seed: u64,
}

impl Default for StreamSpec {
    fn default() -> Self {
        Self {
            chunk_size: 800,
            removal_fraction: 0.2,
            query_count: 50,
            shuffle: false,
            rng_seed: 0,
        }
    }
}

impl StreamSpec {
    pub fn withheld_edges(&self) -> usize {
        self.chunk_size * self.query_count
    }

    pub fn removals_per_chunk(&self) -> usize {
        // Tolerate representation error such as 0.29 * 100 = 28.999...
        (self.removal_fraction * self.chunk_size as f64 + 1e-9).floor() as usize
    }

    fn validate(&self, available_edges: usize) -> Result<()> {
        if self.chunk_size == 0 || self.query_count == 0 {
            return Err(Error::Config(
                "chunk size and query count must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.removal_fraction) {
            return Err(Error::Config(format!(
                "removal fraction {} outside [0, 1]",
                self.removal_fraction
            )));
        }
        if self.withheld_edges() > available_edges {
            return Err(Error::Config(format!(
                "stream needs {} withheld edges but the dataset has {available_edges}",
                self.withheld_edges()
            )));
        }
        Ok(())
    }
}

/// Withholds `chunk_size * query_count` uniformly sampled edges from
/// `full`, returns the remaining graph and a stream that replays the withheld
/// edges chunk by chunk. Each chunk is followed by its removals, drawn
/// uniformly from the edges present before the chunk (original edges and
/// additions from earlier chunks), and then a query.
pub fn generate_stream(
    full: &DynamicGraph,
    spec: &StreamSpec,
) -> Result<(DynamicGraph, Vec<StreamEvent>)> {
    let edges = full.edges();
    spec.validate(edges.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);

    let mut withheld = vec![false; edges.len()];
    let mut picked = index::sample(&mut rng, edges.len(), spec.withheld_edges()).into_vec();
    picked.sort_unstable();
    for &i in &picked {
        withheld[i] = true;
    }
    let mut additions: Vec<_> = picked.iter().map(|&i| edges[i]).collect();
    if spec.shuffle {
        additions.shuffle(&mut rng);
    }

    // Vertices touched only by withheld edges are new when their first edge
    // arrives.
    let mut present: Vec<_> = edges
        .iter()
        .zip(&withheld)
        .filter(|(_, &w)| !w)
        .map(|(&e, _)| e)
        .collect();
    let initial = DynamicGraph::from_edges(present.iter().copied());

    let removals = spec.removals_per_chunk();
    let mut events = Vec::with_capacity(additions.len() + (removals + 1) * spec.query_count);
    for chunk in additions.chunks(spec.chunk_size) {
        events.extend(chunk.iter().map(|&(u, v)| StreamEvent::Add(u, v)));
        if removals > present.len() {
            return Err(Error::Config(format!(
                "cannot remove {removals} edges from {} eligible",
                present.len()
            )));
        }
        let mut targets = index::sample(&mut rng, present.len(), removals).into_vec();
        events.extend(targets.iter().map(|&i| {
            let (u, v) = present[i];
            StreamEvent::Remove(u, v)
        }));
        targets.sort_unstable_by(|a, b| b.cmp(a));
        for i in targets {
            present.swap_remove(i);
        }
        present.extend_from_slice(chunk);
        events.push(StreamEvent::Query);
    }
    Ok((initial, events))
}

fn parse_id(token: &str, line: usize) -> Result<VertexId> {
    if token.starts_with('-') {
        return Err(Error::parse(line, format!("negative vertex id `{token}`")));
    }
    token
        .parse::<u64>()
        .map(VertexId)
        .map_err(|_| Error::parse(line, format!("invalid vertex id `{token}`")))
}

fn parse_pair<'a>(
    mut tokens: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<(VertexId, VertexId)> {
    let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
        return Err(Error::parse(line, "expected exactly two vertex ids"));
    };
    Ok((parse_id(u, line)?, parse_id(v, line)?))
}

/// Parses a whitespace-separated edge list. Duplicate edges collapse. A line
/// holding a single id declares a vertex without edges.
pub fn parse_edge_list(source: impl BufRead) -> Result<DynamicGraph> {
    let mut g = DynamicGraph::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        if trimmed.split_whitespace().count() == 1 {
            g.add_vertex(parse_id(tokens.next().unwrap_or_default(), i + 1)?);
            continue;
        }
        let (u, v) = parse_pair(tokens, i + 1)?;
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Writes `u v` lines sorted by source then target, followed by one line per
/// isolated vertex.
pub fn write_edge_list(g: &DynamicGraph, mut sink: impl Write) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(sink, "{u} {v}")?;
    }
    for v in g.sorted_vertices() {
        if g.out_degree(v) == 0 && g.in_degree(v) == 0 {
            writeln!(sink, "{v}")?;
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn write_stream(events: &[StreamEvent], mut sink: impl Write) -> Result<()> {
    for event in events {
        match event {
            StreamEvent::Add(u, v) => writeln!(sink, "A {u} {v}")?,
            StreamEvent::Remove(u, v) => writeln!(sink, "R {u} {v}")?,
            StreamEvent::Query => writeln!(sink, "Q")?,
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn read_stream(source: impl BufRead) -> Result<Vec<StreamEvent>> {
    let mut events = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut tokens = line.split_whitespace();
        let event = match tokens.next() {
            Some("A") => {
                let (u, v) = parse_pair(tokens, lineno)?;
                StreamEvent::Add(u, v)
            }
            Some("R") => {
                let (u, v) = parse_pair(tokens, lineno)?;
                StreamEvent::Remove(u, v)
            }
            Some("Q") if tokens.next().is_none() => StreamEvent::Query,
            Some("Q") => return Err(Error::parse(lineno, "query takes no arguments")),
            Some(other) => {
                return Err(Error::parse(
                    lineno,
                    format!("unknown event kind `{other}`"),
                ))
            }
            None => return Err(Error::parse(lineno, "empty line")),
        };
        events.push(event);
    }
    Ok(events)
}
