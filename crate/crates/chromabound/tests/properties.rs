//! Module invariants checked exhaustively on small corpora plus
//! property-based determinism checks.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use chromabound::{
    apply_injection, bad_colors, chromatic_polynomial, color_space_size, compare_bounds,
    count_proper_brute, enumerate_colorings, is_proper, klazar_bound, lazebnik_bound,
    liu_murty_bound, verify_theorem, Coloring, Graph,
};
use common::{all_graphs, all_subsets, seeded_random_graphs};

/// Union-find cycle check: adding each edge must join two distinct sets.
fn is_acyclic(edges: &[chromabound::Edge]) -> bool {
    let mut parent: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    fn find(parent: &mut std::collections::BTreeMap<usize, usize>, x: usize) -> usize {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for e in edges {
        let ru = find(&mut parent, e.u());
        let rw = find(&mut parent, e.w());
        if ru == rw {
            return false;
        }
        parent.insert(ru, rw);
    }
    true
}

/// Components of the induced subgraph, computed independently of Forest.
fn reference_components(graph: &Graph, x: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut remaining: BTreeSet<usize> = x.clone();
    let mut components = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(at) = stack.pop() {
            for e in graph.edges() {
                let nb = if e.u() == at {
                    e.w()
                } else if e.w() == at {
                    e.u()
                } else {
                    continue;
                };
                if x.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        for v in &seen {
            remaining.remove(v);
        }
        components.push(seen);
    }
    components
}

#[test]
fn forest_is_spanning_acyclic_and_canonical_on_all_small_graphs() {
    for v in 1..=5 {
        for graph in all_graphs(v) {
            for x in all_subsets(v) {
                let forest = graph.spanning_forest(&x).unwrap();
                let induced = graph.induced_subgraph(&x).unwrap();
                let induced_edges: BTreeSet<_> = induced.edges().iter().copied().collect();
                assert!(
                    forest.tree_edges().iter().all(|e| induced_edges.contains(e)),
                    "tree edges must come from the induced subgraph"
                );
                assert!(is_acyclic(forest.tree_edges()));
                // Per component: edge count = size - 1, and membership agrees
                // with connectivity in the induced subgraph.
                let reference = reference_components(&graph, &x);
                assert_eq!(forest.component_count(), reference.len());
                for id in 0..forest.component_count() {
                    let vertices = forest.component_vertices(id);
                    let edges = forest.component_tree_edges(id);
                    assert_eq!(edges.len() + 1, vertices.len());
                    assert!(reference.contains(&vertices));
                }
            }
        }
    }
}

#[test]
fn forest_paths_reverse_and_walk_tree_edges() {
    for graph in all_graphs(4) {
        let x: BTreeSet<usize> = graph.vertex_set();
        let forest = graph.spanning_forest(&x).unwrap();
        for u in 1..=4 {
            for w in 1..=4 {
                if forest.component_id(u) != forest.component_id(w) {
                    assert!(forest.path(u, w).is_err());
                    continue;
                }
                let forward = forest.path(u, w).unwrap();
                let mut backward = forest.path(w, u).unwrap();
                backward.reverse();
                assert_eq!(forward, backward);
                assert_eq!(forward.first(), Some(&u));
                assert_eq!(forward.last(), Some(&w));
                let tree: BTreeSet<_> = forest.tree_edges().iter().copied().collect();
                for pair in forward.windows(2) {
                    let edge = chromabound::Edge::new(pair[0], pair[1]).unwrap();
                    assert!(tree.contains(&edge), "path steps must be tree edges");
                }
            }
        }
    }
}

#[test]
fn enumeration_yields_exactly_lambda_to_the_v_distinct_colorings() {
    for v in 1..=4 {
        for lambda in 0..=3 {
            let all: Vec<Coloring> = enumerate_colorings(v, lambda).collect();
            let expected = color_space_size(v, lambda);
            assert_eq!(BigInt::from(all.len()), expected);
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(sorted, all, "enumeration is lexicographically sorted");
        }
    }
}

#[test]
fn bad_colors_empty_iff_proper_exhaustive() {
    for v in 1..=4 {
        for graph in all_graphs(v) {
            for lambda in 0..=3 {
                for coloring in enumerate_colorings(v, lambda) {
                    assert_eq!(
                        bad_colors(&graph, &coloring).is_empty(),
                        is_proper(&graph, &coloring)
                    );
                }
            }
        }
    }
}

#[test]
fn proper_count_is_below_color_space_unless_edgeless() {
    for v in 1..=4 {
        for graph in all_graphs(v) {
            for lambda in 1..=3 {
                let count = count_proper_brute(&graph, lambda, 100_000).unwrap();
                let total = color_space_size(v, lambda);
                assert!(count <= total);
                if graph.edge_count() >= 1 && lambda >= 2 {
                    assert!(count < total);
                }
                if graph.edge_count() == 0 {
                    assert_eq!(count, total);
                }
            }
        }
    }
}

#[test]
fn counting_oracles_agree_exhaustively_and_on_random_graphs() {
    for v in 1..=4 {
        for graph in all_graphs(v) {
            let poly = chromatic_polynomial(&graph).unwrap();
            for lambda in 0..=4 {
                assert_eq!(
                    count_proper_brute(&graph, lambda, 100_000).unwrap(),
                    poly.evaluate(lambda)
                );
            }
        }
    }
    for graph in seeded_random_graphs(5, 200, 1000) {
        let poly = chromatic_polynomial(&graph).unwrap();
        for lambda in 0..=4 {
            assert_eq!(
                count_proper_brute(&graph, lambda, 100_000).unwrap(),
                poly.evaluate(lambda),
                "oracles disagree on {graph} at lambda={lambda}"
            );
        }
    }
}

/// Forward images keep the shape the inverse relies on: one or two bad
/// colors, the edge color d among them, and any c-monochromatic edge
/// outside the spanning forest of Y.
#[test]
fn image_elements_have_the_expected_bad_color_structure() {
    for graph in all_graphs(4) {
        if graph.edge_count() == 0 {
            continue;
        }
        for lambda in 2..=3 {
            for f in enumerate_colorings(4, lambda) {
                if !is_proper(&graph, &f) {
                    continue;
                }
                for &h in graph.edges() {
                    let out = apply_injection(&graph, h, &f, lambda).unwrap();
                    let d = f.color_of(h.u());
                    let bad = bad_colors(&graph, &out.g);
                    assert!(!is_proper(&graph, &out.g));
                    assert!(bad.len() == 1 || bad.len() == 2, "B must have 1 or 2 colors");
                    assert!(bad.contains(&d), "d stays bad via the path edges");
                    assert!(bad.iter().all(|b| *b == d || *b == out.c));

                    let y: BTreeSet<usize> = graph
                        .vertices()
                        .filter(|&x| f.color_of(x) == out.c || f.color_of(x) == d)
                        .collect();
                    let forest = graph.spanning_forest(&y).unwrap();
                    let tree: BTreeSet<_> = forest.tree_edges().iter().copied().collect();
                    for e in graph.edges() {
                        let c_mono = out.g.color_of(e.u()) == out.c
                            && out.g.color_of(e.w()) == out.c;
                        if c_mono {
                            assert!(
                                !tree.contains(e),
                                "c-monochromatic edges must avoid the forest"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn verifier_passes_on_sampled_larger_graphs() {
    for graph in seeded_random_graphs(5, 10, 2000) {
        if graph.edge_count() == 0 {
            continue;
        }
        for lambda in 2..=3 {
            verify_theorem(&graph, lambda, 100_000).unwrap();
        }
    }
    for graph in seeded_random_graphs(6, 5, 3000) {
        if graph.edge_count() == 0 {
            continue;
        }
        verify_theorem(&graph, 2, 100_000).unwrap();
    }
}

/// The verified inequality is algebraically the same statement as
/// `count <= klazar_bound`, checked here with exact rationals.
#[test]
fn inequality_rearranges_to_the_count_bound() {
    for graph in all_graphs(4) {
        if graph.edge_count() == 0 {
            continue;
        }
        for lambda in 2..=3 {
            let report = verify_theorem(&graph, lambda, 100_000).unwrap();
            let count = BigRational::from_integer(report.proper_count.clone());
            let bound = klazar_bound(report.v, report.e, lambda);
            let inequality = report.inequality_lhs <= report.inequality_rhs;
            assert_eq!(inequality, count <= bound);
            assert!(inequality);
        }
    }
}

#[test]
fn bound_ordering_chain_holds_on_the_corpus() {
    for v in 1..=4 {
        for graph in all_graphs(v) {
            let e = graph.edge_count();
            if e == 0 {
                continue;
            }
            for lambda in 2..=4 {
                let lazebnik = lazebnik_bound(v, e, lambda);
                let klazar = klazar_bound(v, e, lambda);
                let liu = liu_murty_bound(v, e, lambda).expect("applicable when e >= 1");
                let lazebnik_count = lazebnik.count_bound(v, lambda);
                assert!(lazebnik_count <= klazar);
                assert!(klazar <= liu);
                // third Lazebnik term is exactly the klazar factor
                let scaled = BigRational::from_integer(color_space_size(v, lambda))
                    * &lazebnik.terms[2];
                assert_eq!(scaled, klazar);
            }
        }
    }
}

#[test]
fn counts_respect_the_klazar_bound_with_both_oracles() {
    let mut corpus: Vec<Graph> = Vec::new();
    for v in 1..=4 {
        corpus.extend(all_graphs(v));
    }
    corpus.extend(seeded_random_graphs(5, 40, 4000));
    for graph in &corpus {
        let poly = chromatic_polynomial(graph).unwrap();
        for lambda in 1..=4 {
            let brute = count_proper_brute(graph, lambda, 100_000).unwrap();
            assert_eq!(brute, poly.evaluate(lambda));
            let bound = klazar_bound(graph.vertex_count(), graph.edge_count(), lambda);
            assert!(BigRational::from_integer(brute) <= bound);
        }
    }
}

#[test]
fn reported_rationals_are_reduced_and_reproducible() {
    for graph in all_graphs(3) {
        for lambda in 1..=3 {
            let count = count_proper_brute(&graph, lambda, 1000).unwrap();
            let a = compare_bounds(&graph, lambda, Some(count.clone()));
            let b = compare_bounds(&graph, lambda, Some(count));
            assert_eq!(a, b);
            let mut rationals = vec![a.klazar.clone(), a.lazebnik_a.clone()];
            rationals.extend(a.lazebnik_terms.iter().cloned());
            if let Some(liu) = &a.liu_murty {
                rationals.push(liu.clone());
            }
            for r in rationals {
                if r.numer().is_zero() {
                    assert_eq!(r.denom(), &BigInt::from(1));
                } else {
                    let gcd = num_integer::Integer::gcd(r.numer(), r.denom());
                    assert_eq!(gcd, BigInt::from(1), "{r} is not in lowest terms");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Two independent constructions of the canonical forest agree bit for
    /// bit on random (graph, subset) pairs.
    #[test]
    fn forest_construction_is_deterministic(
        v in 1usize..=8,
        edge_bits in any::<u64>(),
        subset_bits in any::<u32>(),
    ) {
        let pairs = common::all_pairs(v);
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| edge_bits & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        let graph = Graph::new(v, &chosen).unwrap();
        let x: BTreeSet<usize> = (1..=v).filter(|&i| subset_bits & (1 << (i - 1)) != 0).collect();
        let first = graph.spanning_forest(&x).unwrap();
        let second = graph.spanning_forest(&x).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn random_family_is_reproducible(n in 1usize..=9, seed in any::<u64>(), p in 0.0f64..=1.0) {
        let a = Graph::random(n, p, seed).unwrap();
        let b = Graph::random(n, p, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn klazar_is_the_scaled_third_lazebnik_term(
        v in 1usize..=6,
        e in 0usize..=12,
        lambda in 1usize..=5,
    ) {
        let klazar = klazar_bound(v, e, lambda);
        let lazebnik = lazebnik_bound(v, e, lambda);
        let scaled = BigRational::from_integer(color_space_size(v, lambda)) * &lazebnik.terms[2];
        prop_assert_eq!(scaled, klazar);
        let min = lazebnik.terms.iter().min().unwrap();
        prop_assert_eq!(min, &lazebnik.a);
    }
}
