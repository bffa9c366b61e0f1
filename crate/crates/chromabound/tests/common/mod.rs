//! Shared corpus builders for the integration suites: exhaustive labeled
//! graphs and trees on few vertices, plus seeded random graphs.
//!
//! Each test target compiles its own copy, so not every helper is used
//! everywhere.
#![allow(dead_code)]

use std::collections::BTreeSet;

use chromabound::{Edge, Graph};

/// All unordered vertex pairs on `1..=v` in lexicographic order.
pub fn all_pairs(v: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 1..=v {
        for w in u + 1..=v {
            pairs.push((u, w));
        }
    }
    pairs
}

/// Every labeled graph on `1..=v`, one per subset of the possible edges.
pub fn all_graphs(v: usize) -> Vec<Graph> {
    let pairs = all_pairs(v);
    let mut graphs = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        graphs.push(Graph::new(v, &chosen).expect("valid edge subset"));
    }
    graphs
}

/// All subsets of `{1,...,v}`.
pub fn all_subsets(v: usize) -> Vec<BTreeSet<usize>> {
    let mut subsets = Vec::with_capacity(1 << v);
    for mask in 0u32..(1 << v) {
        subsets.push((1..=v).filter(|&x| mask & (1 << (x - 1)) != 0).collect());
    }
    subsets
}

fn is_connected(v: usize, edges: &[Edge]) -> bool {
    let mut reached = vec![false; v + 1];
    let mut stack = vec![1];
    reached[1] = true;
    while let Some(at) = stack.pop() {
        for e in edges {
            let nb = if e.u() == at {
                e.w()
            } else if e.w() == at {
                e.u()
            } else {
                continue;
            };
            if !reached[nb] {
                reached[nb] = true;
                stack.push(nb);
            }
        }
    }
    (1..=v).all(|x| reached[x])
}

/// Every labeled tree on `1..=v`: the connected graphs with exactly
/// `v - 1` edges. Counts follow Cayley's formula `v^(v-2)`.
pub fn all_trees(v: usize) -> Vec<Graph> {
    all_graphs(v)
        .into_iter()
        .filter(|g| g.edge_count() + 1 == g.vertex_count() && is_connected(v, g.edges()))
        .collect()
}

/// Deterministic random graphs: `count` graphs on `v` vertices with edge
/// probabilities cycling through a small palette.
pub fn seeded_random_graphs(v: usize, count: usize, base_seed: u64) -> Vec<Graph> {
    let probabilities = [0.2, 0.5, 0.8];
    (0..count)
        .map(|i| {
            let p = probabilities[i % probabilities.len()];
            Graph::random(v, p, base_seed + i as u64).expect("valid parameters")
        })
        .collect()
}
