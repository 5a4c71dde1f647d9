mod common;

use std::collections::BTreeSet;

use common::*;
use hotgraph_core::{
    generate_stream, parse_edge_list, read_stream, write_edge_list, write_stream, StreamEvent,
    StreamSpec,
};
use proptest::prelude::*;

fn adds(events: &[StreamEvent]) -> Vec<(hotgraph_core::VertexId, hotgraph_core::VertexId)> {
    events
        .iter()
        .filter_map(|e| match *e {
            StreamEvent::Add(u, v) => Some((u, v)),
            _ => None,
        })
        .collect()
}

#[test]
fn default_shaped_stream() {
    let mut r = rng(51);
    let full = random_sparse_graph(&mut r, 8000, 60_000);
    let spec = StreamSpec::default();
    let (initial, events) = generate_stream(&full, &spec).unwrap();
    assert_eq!(initial.edge_count(), 20_000);
    assert_eq!(adds(&events).len(), 40_000);
    let chunks: Vec<_> = events.split(|e| *e == StreamEvent::Query).collect();
    // The trailing query leaves an empty tail.
    assert_eq!(chunks.len(), 51);
    assert!(chunks[50].is_empty());
    for chunk in &chunks[..50] {
        let a = chunk
            .iter()
            .filter(|e| matches!(e, StreamEvent::Add(..)))
            .count();
        let rm = chunk
            .iter()
            .filter(|e| matches!(e, StreamEvent::Remove(..)))
            .count();
        assert_eq!((a, rm), (800, 160));
    }
}

#[test]
fn withheld_plus_initial_is_the_dataset() {
    let mut r = rng(52);
    for shuffle in [false, true] {
        let full = random_sparse_graph(&mut r, 300, 2000);
        let spec = StreamSpec {
            chunk_size: 40,
            removal_fraction: 0.25,
            query_count: 20,
            shuffle,
            rng_seed: 9,
        };
        let (initial, events) = generate_stream(&full, &spec).unwrap();
        let mut union: BTreeSet<_> = initial.edges().into_iter().collect();
        let streamed = adds(&events);
        for e in &streamed {
            assert!(union.insert(*e), "added edge already in the initial graph");
        }
        assert_eq!(union, full.edges().into_iter().collect());
        if !shuffle {
            assert!(streamed.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn removals_only_target_edges_from_earlier_chunks() {
    let mut r = rng(53);
    let full = random_sparse_graph(&mut r, 200, 1500);
    let spec = StreamSpec {
        chunk_size: 50,
        removal_fraction: 0.5,
        query_count: 20,
        shuffle: true,
        rng_seed: 3,
    };
    let (mut g, events) = generate_stream(&full, &spec).unwrap();
    let mut chunk_adds = BTreeSet::new();
    for e in &events {
        match *e {
            StreamEvent::Add(u, v) => {
                assert!(g.add_edge(u, v));
                chunk_adds.insert((u, v));
            }
            StreamEvent::Remove(u, v) => {
                assert!(!chunk_adds.contains(&(u, v)));
                assert!(g.remove_edge(u, v), "removal of an absent edge");
            }
            StreamEvent::Query => chunk_adds.clear(),
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let mut r = rng(54);
    let full = random_sparse_graph(&mut r, 300, 2000);
    let spec = StreamSpec {
        chunk_size: 30,
        removal_fraction: 0.2,
        query_count: 10,
        shuffle: true,
        rng_seed: 77,
    };
    let (g1, e1) = generate_stream(&full, &spec).unwrap();
    let (g2, e2) = generate_stream(&full, &spec).unwrap();
    assert_eq!(g1, g2);
    let (mut b1, mut b2) = (Vec::new(), Vec::new());
    write_stream(&e1, &mut b1).unwrap();
    write_stream(&e2, &mut b2).unwrap();
    assert_eq!(b1, b2);

    let other = StreamSpec {
        rng_seed: 78,
        ..spec
    };
    assert_ne!(generate_stream(&full, &other).unwrap().1, e1);
}

proptest! {
    #[test]
    fn stream_files_round_trip(seed in any::<u64>(), chunk in 1usize..20, q in 1usize..10, frac in 0.0f64..1.0) {
        let mut r = rng(seed);
        let full = random_sparse_graph(&mut r, 60, 300);
        let spec = StreamSpec { chunk_size: chunk, removal_fraction: frac, query_count: q, shuffle: seed % 2 == 0, rng_seed: seed };
        let (g0, events) = generate_stream(&full, &spec).unwrap();
        let mut buf = Vec::new();
        write_stream(&events, &mut buf).unwrap();
        prop_assert_eq!(read_stream(buf.as_slice()).unwrap(), events);
        let mut buf = Vec::new();
        write_edge_list(&g0, &mut buf).unwrap();
        prop_assert_eq!(parse_edge_list(buf.as_slice()).unwrap(), g0);
    }
}
