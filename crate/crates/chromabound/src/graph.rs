//! Simple labeled graphs on vertices `1..=v`, deterministic graph families,
//! induced subgraphs, and canonical spanning forests with unique-path queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors from graph construction, graph families, and edge-list parsing.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    ZeroVertices,
    #[error("loop edge ({0},{0}) is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("duplicate edge {{{u},{w}}}")]
    DuplicateEdge { u: usize, w: usize },
    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("cycle family needs n >= 3, got {0}")]
    CycleTooSmall(usize),
    #[error("edge probability {0} is outside [0,1]")]
    InvalidProbability(f64),
    #[error("family {family} requires {what}")]
    MissingFamilyParam {
        family: &'static str,
        what: &'static str,
    },
    #[error("unknown family {0:?}, expected path, cycle, complete or random")]
    UnknownFamily(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Errors from tree-path queries on a forest.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("vertex {0} is not in the forest")]
    NotInForest(usize),
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
}

/// Undirected edge `{u,w}`, always stored with `u < w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    w: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::LoopEdge(a));
        }
        Ok(Edge::ordered(a, b))
    }

    fn ordered(a: usize, b: usize) -> Edge {
        debug_assert_ne!(a, b);
        Edge {
            u: a.min(b),
            w: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.w)
    }

    pub fn touches(&self, v: usize) -> bool {
        self.u == v || self.w == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.w)
    }
}

/// Simple graph on vertex set `{1,...,v}` with a sorted, duplicate-free
/// edge list. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from a vertex count and unordered vertex pairs.
    /// Pairs may come in either orientation; each is stored with `u < w`.
    pub fn new(v: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if v == 0 {
            return Err(GraphError::ZeroVertices);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for x in [a, b] {
                if x < 1 || x > v {
                    return Err(GraphError::VertexOutOfRange { vertex: x, max: v });
                }
            }
            edges.push(Edge::new(a, b)?);
        }
        edges.sort_unstable();
        if let Some(pair) = edges.windows(2).find(|p| p[0] == p[1]) {
            return Err(GraphError::DuplicateEdge {
                u: pair[0].u,
                w: pair[0].w,
            });
        }
        Ok(Graph { v, edges })
    }

    /// Path 1-2-...-n.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroVertices);
        }
        let edges = (1..n).map(|i| Edge { u: i, w: i + 1 }).collect();
        Ok(Graph { v: n, edges })
    }

    /// Cycle 1-2-...-n-1.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        let mut edges: Vec<Edge> = (1..n).map(|i| Edge { u: i, w: i + 1 }).collect();
        edges.push(Edge { u: 1, w: n });
        edges.sort_unstable();
        Ok(Graph { v: n, edges })
    }

    /// Complete graph on n vertices.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroVertices);
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 1..=n {
            for w in u + 1..=n {
                edges.push(Edge { u, w });
            }
        }
        Ok(Graph { v: n, edges })
    }

    /// G(n,p) random graph: every pair `{u,w}` with `u < w`, visited in
    /// lexicographic order, gets an independent Bernoulli(p) draw from a
    /// ChaCha8 stream seeded with `seed`. The same `(n, p, seed)` always
    /// produces the same graph.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroVertices);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidProbability(p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 1..=n {
            for w in u + 1..=n {
                if rng.gen_bool(p) {
                    edges.push(Edge { u, w });
                }
            }
        }
        Ok(Graph { v: n, edges })
    }

    /// Parses the edge-list text format: a `v e` header line, then `e`
    /// lines `u w` with `1 <= u < w <= v`. Tokens are whitespace separated;
    /// blank lines and lines starting with `#` are skipped. Errors name the
    /// offending line.
    pub fn from_edge_list(input: &str) -> Result<Graph, GraphError> {
        fn err(line: usize, message: impl Into<String>) -> GraphError {
            GraphError::Parse {
                line,
                message: message.into(),
            }
        }
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| err(1, "missing `v e` header"))?;
        let mut tokens = header.split_whitespace();
        let (Some(vs), Some(es), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(err(header_line, format!("expected header `v e`, got {header:?}")));
        };
        let v: usize = vs
            .parse()
            .map_err(|_| err(header_line, format!("invalid vertex count {vs:?}")))?;
        let e: usize = es
            .parse()
            .map_err(|_| err(header_line, format!("invalid edge count {es:?}")))?;
        if v == 0 {
            return Err(err(header_line, "graph must have at least one vertex"));
        }
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(e);
        let mut last_line = header_line;
        while edges.len() < e {
            let (line, text) = lines.next().ok_or_else(|| {
                err(
                    last_line,
                    format!("expected {e} edge lines, found {}", edges.len()),
                )
            })?;
            last_line = line;
            let mut tokens = text.split_whitespace();
            let (Some(us), Some(ws), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                return Err(err(line, format!("expected edge line `u w`, got {text:?}")));
            };
            let u: usize = us
                .parse()
                .map_err(|_| err(line, format!("invalid vertex {us:?}")))?;
            let w: usize = ws
                .parse()
                .map_err(|_| err(line, format!("invalid vertex {ws:?}")))?;
            if u == w {
                return Err(err(line, format!("loop edge ({u},{u})")));
            }
            if u > w {
                return Err(err(line, format!("expected u < w, got {u} {w}")));
            }
            if u < 1 || w > v {
                let bad = if u < 1 { u } else { w };
                return Err(err(line, format!("vertex {bad} out of range 1..={v}")));
            }
            if !seen.insert((u, w)) {
                return Err(err(line, format!("duplicate edge {{{u},{w}}}")));
            }
            edges.push(Edge { u, w });
        }
        if let Some((line, text)) = lines.next() {
            return Err(err(line, format!("unexpected extra line {text:?} after {e} edges")));
        }
        edges.sort_unstable();
        Ok(Graph { v, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Vertex labels `1..=v` in ascending order.
    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.v
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices().collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        self.edges.binary_search(&Edge::ordered(a, b)).is_ok()
    }

    fn check_subset(&self, x: &BTreeSet<usize>) -> Result<(), GraphError> {
        if let Some(&lo) = x.first() {
            if lo < 1 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: lo,
                    max: self.v,
                });
            }
        }
        if let Some(&hi) = x.last() {
            if hi > self.v {
                return Err(GraphError::VertexOutOfRange {
                    vertex: hi,
                    max: self.v,
                });
            }
        }
        Ok(())
    }

    /// The subgraph induced on `x`: vertex set `x` and exactly the edges of
    /// `self` with both endpoints in `x`. Labels are preserved.
    pub fn induced_subgraph(&self, x: &BTreeSet<usize>) -> Result<Subgraph, GraphError> {
        self.check_subset(x)?;
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| x.contains(&e.u) && x.contains(&e.w))
            .collect();
        Ok(Subgraph {
            vertices: x.clone(),
            edges,
        })
    }

    /// Canonical spanning forest of the subgraph induced on `x`.
    ///
    /// Fully determined by `(self, x)`: components are discovered in
    /// ascending order of their smallest vertex, each is rooted at that
    /// smallest vertex, and depth-first search visits neighbors in ascending
    /// label order. Calling twice with equal inputs yields identical
    /// forests.
    pub fn spanning_forest(&self, x: &BTreeSet<usize>) -> Result<Forest, GraphError> {
        self.check_subset(x)?;
        let mut adj: BTreeMap<usize, Vec<usize>> = x.iter().map(|&vx| (vx, Vec::new())).collect();
        for e in &self.edges {
            if x.contains(&e.u) && x.contains(&e.w) {
                adj.get_mut(&e.u).unwrap().push(e.w);
                adj.get_mut(&e.w).unwrap().push(e.u);
            }
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }

        let mut visited: BTreeSet<usize> = BTreeSet::new();
        let mut component_id = BTreeMap::new();
        let mut parent = BTreeMap::new();
        let mut tree_edges = Vec::new();
        let mut next_component = 0;
        for &root in x {
            if visited.contains(&root) {
                continue;
            }
            visited.insert(root);
            component_id.insert(root, next_component);
            parent.insert(root, None);
            let mut stack = vec![(root, adj[&root].clone().into_iter())];
            while let Some((at, neighbors)) = stack.last_mut() {
                let at = *at;
                match neighbors.next() {
                    Some(nb) if !visited.contains(&nb) => {
                        visited.insert(nb);
                        component_id.insert(nb, next_component);
                        parent.insert(nb, Some(at));
                        tree_edges.push(Edge::ordered(at, nb));
                        stack.push((nb, adj[&nb].clone().into_iter()));
                    }
                    Some(_) => {}
                    None => {
                        stack.pop();
                    }
                }
            }
            next_component += 1;
        }
        tree_edges.sort_unstable();
        Ok(Forest {
            vertices: x.clone(),
            tree_edges,
            component_id,
            parent,
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} edges=[", self.v)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Vertex-induced subgraph; keeps the original vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    vertices: BTreeSet<usize>,
    edges: Vec<Edge>,
}

impl Subgraph {
    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Canonical spanning forest of an induced subgraph: one fixed spanning
/// tree per component, with parent pointers toward each component's root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    vertices: BTreeSet<usize>,
    tree_edges: Vec<Edge>,
    component_id: BTreeMap<usize, usize>,
    parent: BTreeMap<usize, Option<usize>>,
}

impl Forest {
    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn tree_edges(&self) -> &[Edge] {
        &self.tree_edges
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn component_id(&self, v: usize) -> Option<usize> {
        self.component_id.get(&v).copied()
    }

    pub fn component_count(&self) -> usize {
        self.component_id.values().max().map_or(0, |&m| m + 1)
    }

    pub fn component_vertices(&self, id: usize) -> BTreeSet<usize> {
        self.component_id
            .iter()
            .filter(|(_, &cid)| cid == id)
            .map(|(&vx, _)| vx)
            .collect()
    }

    /// Tree edges of one component. Both endpoints of a tree edge always
    /// share a component, so filtering on either suffices.
    pub fn component_tree_edges(&self, id: usize) -> Vec<Edge> {
        self.tree_edges
            .iter()
            .copied()
            .filter(|e| self.component_id[&e.u] == id)
            .collect()
    }

    /// The unique tree path from `u` to `w`, as a vertex sequence starting
    /// at `u` and ending at `w`.
    pub fn path(&self, u: usize, w: usize) -> Result<Vec<usize>, ForestError> {
        let cu = self.component_id(u).ok_or(ForestError::NotInForest(u))?;
        let cw = self.component_id(w).ok_or(ForestError::NotInForest(w))?;
        if cu != cw {
            return Err(ForestError::DifferentComponents(u, w));
        }
        // Walk to the root from both ends; the walks meet at the lowest
        // common ancestor.
        let mut up_from_u = vec![u];
        let mut x = u;
        while let Some(p) = self.parent[&x] {
            up_from_u.push(p);
            x = p;
        }
        let index_of: BTreeMap<usize, usize> = up_from_u
            .iter()
            .enumerate()
            .map(|(i, &vx)| (vx, i))
            .collect();
        let mut tail = Vec::new();
        let mut y = w;
        while !index_of.contains_key(&y) {
            tail.push(y);
            y = self.parent[&y].expect("walk reaches the shared root");
        }
        let mut path = up_from_u[..=index_of[&y]].to_vec();
        path.extend(tail.into_iter().rev());
        Ok(path)
    }
}

/// Built-in graph families for experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Random => "random",
        }
    }

    /// Dispatching constructor. `seed` and `p` are required for `Random`
    /// and ignored by the deterministic families.
    pub fn build(self, n: usize, seed: Option<u64>, p: Option<f64>) -> Result<Graph, GraphError> {
        match self {
            Family::Path => Graph::path(n),
            Family::Cycle => Graph::cycle(n),
            Family::Complete => Graph::complete(n),
            Family::Random => {
                let p = p.ok_or(GraphError::MissingFamilyParam {
                    family: "random",
                    what: "p",
                })?;
                let seed = seed.ok_or(GraphError::MissingFamilyParam {
                    family: "random",
                    what: "seed",
                })?;
                Graph::random(n, p, seed)
            }
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Family, GraphError> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "random" => Ok(Family::Random),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }
}
