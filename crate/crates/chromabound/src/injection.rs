//! The injection from (edge, proper coloring) pairs to (color, improper
//! coloring) pairs, its inverse reconstruction, the image-multiplicity
//! bound, and an exhaustive verifier that derives the counting inequality
//! `e * |proper| <= (lambda-1) * (lambda^v - |proper|)` from those facts.
//!
//! Forward direction, for an edge `h = {u,w}` with `u < w` and a proper
//! coloring `f`: put `d = f(u)` and `c = f(w)` (the orientation is
//! normative, the inverse relies on it). Let `Y` be the set of vertices
//! colored `c` or `d`, take the canonical spanning forest of the subgraph
//! induced on `Y`, and let `K` be the tree component holding both `u` and
//! `w` with `P` the unique tree path between them. The output coloring `g`
//! recolors `K` with `{c,d}` so that all of `P` gets `d` and no tree edge
//! outside `P` is monochromatic; outside `K` it equals `f`. The output pair
//! is `(c, g)`, where `c` is the color the recoloring removed from `P`.
//!
//! Inversion recovers everything from `(c, g)` alone, rejecting anything
//! outside the image as an ordinary "not in image" result rather than an
//! error. The final acceptance test re-applies the forward map and demands
//! it reproduce `(c, g)` exactly, so every implicit membership condition is
//! enforced at once.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coloring::{bad_colors, color_space_size, enumerate_colorings, is_proper, Coloring};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InjectionError {
    #[error("need at least 2 colors, got {0}")]
    TooFewColors(usize),
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("coloring is not proper")]
    NotProper,
    #[error("coloring is proper, expected an improper one")]
    Proper,
    #[error("color {color} out of range for {lambda} colors")]
    ColorOutOfRange { color: usize, lambda: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("recoloring colors must differ")]
    EqualColors,
    #[error("path is empty")]
    EmptyPath,
    #[error("path vertex {0} is outside the component")]
    PathNotInComponent(usize),
    #[error("path step {0}-{1} is not a tree edge of the component")]
    PathStepNotTreeEdge(usize, usize),
    #[error("component is not a tree")]
    NotATree,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Injection(#[from] InjectionError),
    #[error("enumeration budget exceeded: {total} colorings > budget {budget}")]
    BudgetExceeded { total: BigInt, budget: u64 },
    #[error("counterexample: {0}")]
    Counterexample(Box<Counterexample>),
}

/// Domain element of the injection: an edge together with a proper coloring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DomainElem {
    pub h: Edge,
    pub f: Coloring,
}

/// Image element: a color together with an improper coloring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ImageElem {
    pub c: usize,
    pub g: Coloring,
}

/// Everything `verify_theorem` checks and measures on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub v: usize,
    pub e: usize,
    pub lambda: usize,
    pub proper_count: BigInt,
    /// `e * proper_count`, the size of the injection's domain.
    pub domain_size: BigInt,
    pub injective: bool,
    pub max_image_multiplicity: usize,
    /// `e * proper_count`.
    pub inequality_lhs: BigInt,
    /// `(lambda - 1) * (lambda^v - proper_count)`.
    pub inequality_rhs: BigInt,
    pub bound_holds: bool,
}

/// A failed verification property, reported with the witnessing data
/// instead of being swallowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Graph,
    pub lambda: usize,
    pub kind: CounterexampleKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterexampleKind {
    ForwardFailed {
        h: Edge,
        f: Coloring,
        reason: String,
    },
    ImageNotImproper {
        h: Edge,
        f: Coloring,
        c: usize,
        g: Coloring,
    },
    NotInjective {
        first: DomainElem,
        second: DomainElem,
        c: usize,
        g: Coloring,
    },
    RoundTripFailed {
        h: Edge,
        f: Coloring,
        c: usize,
        g: Coloring,
        recovered: Option<DomainElem>,
    },
    MultiplicityExceeded {
        g: Coloring,
        inverting_colors: Vec<usize>,
    },
    TwoBadMultiplicity {
        g: Coloring,
        inverting_colors: Vec<usize>,
    },
    InequalityViolated {
        lhs: BigInt,
        rhs: BigInt,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Colors render 1-based here, matching Coloring's Display.
        write!(out, "graph {} with lambda={}: ", self.graph, self.lambda)?;
        match &self.kind {
            CounterexampleKind::ForwardFailed { h, f, reason } => {
                write!(out, "forward map failed on (h={h}, f={f}): {reason}")
            }
            CounterexampleKind::ImageNotImproper { h, f, c, g } => write!(
                out,
                "image of (h={h}, f={f}) is proper: (c={}, g={g})",
                c + 1
            ),
            CounterexampleKind::NotInjective {
                first,
                second,
                c,
                g,
            } => write!(
                out,
                "both (h={}, f={}) and (h={}, f={}) map to (c={}, g={g})",
                first.h,
                first.f,
                second.h,
                second.f,
                c + 1
            ),
            CounterexampleKind::RoundTripFailed {
                h,
                f,
                c,
                g,
                recovered,
            } => {
                write!(
                    out,
                    "inverting (c={}, g={g}) did not return (h={h}, f={f}); got ",
                    c + 1
                )?;
                match recovered {
                    Some(d) => write!(out, "(h={}, f={})", d.h, d.f),
                    None => write!(out, "not-in-image"),
                }
            }
            CounterexampleKind::MultiplicityExceeded {
                g,
                inverting_colors,
            } => write!(
                out,
                "improper coloring g={g} inverts for {} colors {:?}, more than lambda-1={}",
                inverting_colors.len(),
                inverting_colors.iter().map(|c| c + 1).collect::<Vec<_>>(),
                self.lambda - 1
            ),
            CounterexampleKind::TwoBadMultiplicity {
                g,
                inverting_colors,
            } => write!(
                out,
                "improper coloring g={g} has two bad colors but inverts for colors {:?}",
                inverting_colors.iter().map(|c| c + 1).collect::<Vec<_>>()
            ),
            CounterexampleKind::InequalityViolated { lhs, rhs } => write!(
                out,
                "e*|proper| = {lhs} exceeds (lambda-1)*(lambda^v - |proper|) = {rhs}"
            ),
        }
    }
}

/// The unique `{c,d}`-coloring of the tree `K` (given by its vertex set and
/// tree edges) in which every vertex of `path` gets `d` and no tree edge
/// outside the path is monochromatic. Found by alternating colors outward
/// from the path: even tree-distance gets `d`, odd gets `c`.
pub fn recolor_component(
    vertices: &BTreeSet<usize>,
    tree_edges: &[Edge],
    path: &[usize],
    c: usize,
    d: usize,
) -> Result<BTreeMap<usize, usize>, InjectionError> {
    if c == d {
        return Err(InjectionError::EqualColors);
    }
    if path.is_empty() {
        return Err(InjectionError::EmptyPath);
    }
    if tree_edges.len() + 1 != vertices.len() {
        return Err(InjectionError::NotATree);
    }
    for &pv in path {
        if !vertices.contains(&pv) {
            return Err(InjectionError::PathNotInComponent(pv));
        }
    }
    let edge_set: BTreeSet<Edge> = tree_edges.iter().copied().collect();
    for pair in path.windows(2) {
        let step = Edge::new(pair[0], pair[1])
            .map_err(|_| InjectionError::PathStepNotTreeEdge(pair[0], pair[1]))?;
        if !edge_set.contains(&step) {
            return Err(InjectionError::PathStepNotTreeEdge(pair[0], pair[1]));
        }
    }

    let mut adjacency: BTreeMap<usize, Vec<usize>> =
        vertices.iter().map(|&vx| (vx, Vec::new())).collect();
    for e in tree_edges {
        adjacency.get_mut(&e.u()).ok_or(InjectionError::NotATree)?.push(e.w());
        adjacency.get_mut(&e.w()).ok_or(InjectionError::NotATree)?.push(e.u());
    }
    let mut color: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &pv in path {
        if color.insert(pv, d).is_none() {
            queue.push_back(pv);
        }
    }
    while let Some(at) = queue.pop_front() {
        let here = color[&at];
        let next = if here == d { c } else { d };
        for &nb in &adjacency[&at] {
            if let Entry::Vacant(slot) = color.entry(nb) {
                slot.insert(next);
                queue.push_back(nb);
            }
        }
    }
    if color.len() != vertices.len() {
        return Err(InjectionError::NotATree);
    }
    Ok(color)
}

/// Forward map: sends `(h, f)` with `h` an edge and `f` proper to `(c, g)`
/// with `g` improper. See the module docs for the construction. The output
/// is always improper because the edge `h` itself ends up monochromatic in
/// `d`.
pub fn apply_injection(
    graph: &Graph,
    h: Edge,
    f: &Coloring,
    lambda: usize,
) -> Result<ImageElem, InjectionError> {
    if lambda < 2 {
        return Err(InjectionError::TooFewColors(lambda));
    }
    assert_eq!(
        f.vertex_count(),
        graph.vertex_count(),
        "coloring must cover every vertex"
    );
    if let Some(&bad) = f.colors().iter().find(|&&col| col >= lambda) {
        return Err(InjectionError::ColorOutOfRange { color: bad, lambda });
    }
    if !graph.contains_edge(h.u(), h.w()) {
        return Err(InjectionError::NotAnEdge(h));
    }
    if !is_proper(graph, f) {
        return Err(InjectionError::NotProper);
    }

    let (u, w) = h.endpoints();
    let d = f.color_of(u);
    let c = f.color_of(w);
    debug_assert_ne!(c, d, "f is proper on the edge h");

    let y: BTreeSet<usize> = graph
        .vertices()
        .filter(|&x| {
            let col = f.color_of(x);
            col == c || col == d
        })
        .collect();
    let forest = graph.spanning_forest(&y).expect("Y is within the vertex range");
    let component = forest
        .component_id(u)
        .expect("u is in Y because f(u) = d");
    debug_assert_eq!(
        forest.component_id(w),
        Some(component),
        "h is an edge of the induced subgraph, so u and w share a component"
    );
    let path = forest.path(u, w).expect("u and w share a component");
    let k_vertices = forest.component_vertices(component);
    let k_tree_edges = forest.component_tree_edges(component);
    let recolored = recolor_component(&k_vertices, &k_tree_edges, &path, c, d)?;

    let mut colors = f.colors().to_vec();
    for (&vx, &col) in &recolored {
        colors[vx - 1] = col;
    }
    Ok(ImageElem {
        c,
        g: Coloring::new(colors),
    })
}

/// Checks that the edges form a single path and returns its endpoints
/// `(u, w)` with `u < w`: connected, exactly two vertices of degree 1, all
/// other degrees 2 (a single edge passes with its two endpoints).
fn path_endpoints(edges: &[Edge]) -> Option<(usize, usize)> {
    if edges.is_empty() {
        return None;
    }
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for e in edges {
        *degree.entry(e.u()).or_default() += 1;
        *degree.entry(e.w()).or_default() += 1;
    }
    if degree.values().any(|&dg| dg > 2) {
        return None;
    }
    let ends: Vec<usize> = degree
        .iter()
        .filter(|(_, &dg)| dg == 1)
        .map(|(&vx, _)| vx)
        .collect();
    if ends.len() != 2 || edges.len() + 1 != degree.len() {
        return None;
    }
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in edges {
        adjacency.entry(e.u()).or_default().push(e.w());
        adjacency.entry(e.w()).or_default().push(e.u());
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut queue = VecDeque::from([ends[0]]);
    seen.insert(ends[0]);
    while let Some(at) = queue.pop_front() {
        for &nb in &adjacency[&at] {
            if seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    if seen.len() != degree.len() {
        return None;
    }
    // BTreeMap iteration gives the degree-1 vertices in ascending order.
    Some((ends[0], ends[1]))
}

/// Proper 2-coloring of a tree with the root pinned to `root_color`:
/// vertices at even distance from the root get `root_color`, odd distance
/// gets `other`.
fn tree_two_coloring(
    vertices: &BTreeSet<usize>,
    tree_edges: &[Edge],
    root: usize,
    root_color: usize,
    other: usize,
) -> BTreeMap<usize, usize> {
    let mut adjacency: BTreeMap<usize, Vec<usize>> =
        vertices.iter().map(|&vx| (vx, Vec::new())).collect();
    for e in tree_edges {
        adjacency.get_mut(&e.u()).unwrap().push(e.w());
        adjacency.get_mut(&e.w()).unwrap().push(e.u());
    }
    let mut color = BTreeMap::new();
    color.insert(root, root_color);
    let mut queue = VecDeque::from([root]);
    while let Some(at) = queue.pop_front() {
        let next = if color[&at] == root_color {
            other
        } else {
            root_color
        };
        for &nb in &adjacency[&at] {
            if let Entry::Vacant(slot) = color.entry(nb) {
                slot.insert(next);
                queue.push_back(nb);
            }
        }
    }
    debug_assert_eq!(color.len(), vertices.len(), "tree components are connected");
    color
}

/// Inverse reconstruction. Returns `Ok(None)` when `(c, g)` is not in the
/// image; errors only signal precondition violations (`g` proper, too few
/// colors, `c` out of range).
///
/// Steps: `B' = {c} union bad(g)` must have exactly two elements; `Y` is
/// the preimage of `B'`; in the canonical forest on `Y` exactly one color
/// `d != c` may be bad on tree edges; the `d`-monochromatic tree edges must
/// form a single path whose endpoints `u < w` are adjacent in the graph,
/// giving `h = {u,w}`; the component of the path is re-colored to the
/// unique proper `{c,d}` tree coloring keeping `u` at `d`, which must make
/// the whole coloring proper; finally the forward map applied to the
/// candidate `(h, f)` must reproduce `(c, g)` exactly.
pub fn invert_injection(
    graph: &Graph,
    c: usize,
    g: &Coloring,
    lambda: usize,
) -> Result<Option<DomainElem>, InjectionError> {
    if lambda < 2 {
        return Err(InjectionError::TooFewColors(lambda));
    }
    if c >= lambda {
        return Err(InjectionError::ColorOutOfRange { color: c, lambda });
    }
    assert_eq!(
        g.vertex_count(),
        graph.vertex_count(),
        "coloring must cover every vertex"
    );
    if let Some(&bad) = g.colors().iter().find(|&&col| col >= lambda) {
        return Err(InjectionError::ColorOutOfRange { color: bad, lambda });
    }
    let bad = bad_colors(graph, g);
    if bad.is_empty() {
        return Err(InjectionError::Proper);
    }

    let mut b_prime = bad.clone();
    b_prime.insert(c);
    if b_prime.len() != 2 {
        return Ok(None);
    }

    let y: BTreeSet<usize> = graph
        .vertices()
        .filter(|&x| b_prime.contains(&g.color_of(x)))
        .collect();
    let forest = graph.spanning_forest(&y).expect("Y is within the vertex range");

    let mono: Vec<Edge> = forest
        .tree_edges()
        .iter()
        .copied()
        .filter(|e| g.color_of(e.u()) == g.color_of(e.w()))
        .collect();
    let tree_bad: BTreeSet<usize> = mono.iter().map(|e| g.color_of(e.u())).collect();
    if tree_bad.len() != 1 {
        return Ok(None);
    }
    let d = *tree_bad.iter().next().unwrap();
    if d == c {
        return Ok(None);
    }

    let Some((u, w)) = path_endpoints(&mono) else {
        return Ok(None);
    };
    if !graph.contains_edge(u, w) {
        return Ok(None);
    }
    let h = Edge::new(u, w).expect("path endpoints differ");

    let component = forest.component_id(u).expect("u is in Y");
    let k_vertices = forest.component_vertices(component);
    let k_tree_edges = forest.component_tree_edges(component);
    let two_coloring = tree_two_coloring(&k_vertices, &k_tree_edges, u, d, c);

    let mut colors = g.colors().to_vec();
    for (&vx, &col) in &two_coloring {
        colors[vx - 1] = col;
    }
    let f = Coloring::new(colors);
    if !is_proper(graph, &f) {
        return Ok(None);
    }

    // Re-apply the forward map; equality with (c, g) enforces every
    // remaining membership condition at once.
    let image = apply_injection(graph, h, &f, lambda)?;
    if image.c == c && image.g == *g {
        Ok(Some(DomainElem { h, f }))
    } else {
        Ok(None)
    }
}

/// The number of colors `c` for which `(c, g)` lies in the image. The
/// verifier checks this never exceeds `lambda - 1`.
pub fn image_multiplicity(
    graph: &Graph,
    g: &Coloring,
    lambda: usize,
) -> Result<usize, InjectionError> {
    if lambda < 2 {
        return Err(InjectionError::TooFewColors(lambda));
    }
    if is_proper(graph, g) {
        return Err(InjectionError::Proper);
    }
    let mut n = 0;
    for c in 0..lambda {
        if invert_injection(graph, c, g, lambda)?.is_some() {
            n += 1;
        }
    }
    Ok(n)
}

fn counterexample(graph: &Graph, lambda: usize, kind: CounterexampleKind) -> VerifyError {
    VerifyError::Counterexample(Box::new(Counterexample {
        graph: graph.clone(),
        lambda,
        kind,
    }))
}

/// Exhaustively verifies the counting argument on one instance: applies the
/// forward map to the full domain, checks that every output is improper,
/// that the map is injective, that inversion recovers every domain element,
/// that the image multiplicity of every improper coloring is at most
/// `lambda - 1` (and at most 1 when it has two bad colors), and finally the
/// counting inequality itself. Any failure comes back as a counterexample
/// carrying the witnessing data.
pub fn verify_theorem(
    graph: &Graph,
    lambda: usize,
    budget: u64,
) -> Result<VerificationReport, VerifyError> {
    if lambda < 2 {
        return Err(InjectionError::TooFewColors(lambda).into());
    }
    if graph.edge_count() == 0 {
        return Err(InjectionError::NoEdges.into());
    }
    let v = graph.vertex_count();
    let e = graph.edge_count();
    let total = color_space_size(v, lambda);
    if total > BigInt::from(budget) {
        return Err(VerifyError::BudgetExceeded { total, budget });
    }

    let mut proper = Vec::new();
    let mut improper = Vec::new();
    for f in enumerate_colorings(v, lambda) {
        if is_proper(graph, &f) {
            proper.push(f);
        } else {
            improper.push(f);
        }
    }
    let proper_count = BigInt::from(proper.len());

    // Forward pass over the whole domain E x C^p.
    let mut image: BTreeMap<(usize, Coloring), DomainElem> = BTreeMap::new();
    for &h in graph.edges() {
        for f in &proper {
            let out = apply_injection(graph, h, f, lambda).map_err(|err| {
                counterexample(
                    graph,
                    lambda,
                    CounterexampleKind::ForwardFailed {
                        h,
                        f: f.clone(),
                        reason: err.to_string(),
                    },
                )
            })?;
            if is_proper(graph, &out.g) {
                return Err(counterexample(
                    graph,
                    lambda,
                    CounterexampleKind::ImageNotImproper {
                        h,
                        f: f.clone(),
                        c: out.c,
                        g: out.g,
                    },
                ));
            }
            let elem = DomainElem { h, f: f.clone() };
            if let Some(first) = image.insert((out.c, out.g.clone()), elem.clone()) {
                return Err(counterexample(
                    graph,
                    lambda,
                    CounterexampleKind::NotInjective {
                        first,
                        second: elem,
                        c: out.c,
                        g: out.g,
                    },
                ));
            }
        }
    }

    // Round trip: inversion must recover exactly the stored preimage.
    for ((c, g), elem) in &image {
        let recovered = invert_injection(graph, *c, g, lambda)?;
        if recovered.as_ref() != Some(elem) {
            return Err(counterexample(
                graph,
                lambda,
                CounterexampleKind::RoundTripFailed {
                    h: elem.h,
                    f: elem.f.clone(),
                    c: *c,
                    g: g.clone(),
                    recovered,
                },
            ));
        }
    }

    // Image multiplicity over every improper coloring, in or out of image.
    let mut max_image_multiplicity = 0;
    for g in &improper {
        let inverting: Vec<usize> = (0..lambda)
            .filter_map(|c| match invert_injection(graph, c, g, lambda) {
                Ok(Some(_)) => Some(Ok(c)),
                Ok(None) => None,
                Err(err) => Some(Err(err)),
            })
            .collect::<Result<_, _>>()?;
        if inverting.len() > lambda - 1 {
            return Err(counterexample(
                graph,
                lambda,
                CounterexampleKind::MultiplicityExceeded {
                    g: g.clone(),
                    inverting_colors: inverting,
                },
            ));
        }
        if bad_colors(graph, g).len() == 2 && inverting.len() > 1 {
            return Err(counterexample(
                graph,
                lambda,
                CounterexampleKind::TwoBadMultiplicity {
                    g: g.clone(),
                    inverting_colors: inverting,
                },
            ));
        }
        max_image_multiplicity = max_image_multiplicity.max(inverting.len());
    }

    let inequality_lhs = BigInt::from(e) * &proper_count;
    let inequality_rhs = BigInt::from(lambda - 1) * (&total - &proper_count);
    if inequality_lhs > inequality_rhs {
        return Err(counterexample(
            graph,
            lambda,
            CounterexampleKind::InequalityViolated {
                lhs: inequality_lhs,
                rhs: inequality_rhs,
            },
        ));
    }

    Ok(VerificationReport {
        v,
        e,
        lambda,
        proper_count: proper_count.clone(),
        domain_size: BigInt::from(e) * &proper_count,
        injective: true,
        max_image_multiplicity,
        inequality_lhs,
        inequality_rhs,
        bound_holds: true,
    })
}
