//! Colorings of vertices `1..=v` by colors `0..lambda`, properness and
//! bad-color analysis, exhaustive enumeration, and two independent exact
//! counters (brute force and chromatic polynomial) that cross-check each
//! other.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

/// Hard vertex cap for the deletion-contraction counter.
pub const MAX_POLYNOMIAL_VERTICES: usize = 12;

/// Default enumeration budget (number of colorings) for brute-force counting.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("enumeration budget exceeded: {total} colorings > budget {budget}")]
    BudgetExceeded { total: BigInt, budget: u64 },
    #[error("graph too large for deletion-contraction: {v} vertices > {max}")]
    TooManyVertices { v: usize, max: usize },
}

/// Total assignment of a color in `0..lambda` to every vertex `1..=v`.
/// Colors are 0-based internally; `Display` renders them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        Coloring(colors)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    /// Color of a vertex; `vertex` is a 1-based label.
    pub fn color_of(&self, vertex: usize) -> usize {
        self.0[vertex - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn fits(&self, lambda: usize) -> bool {
        self.0.iter().all(|&c| c < lambda)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        write!(f, ")")
    }
}

/// True iff no edge has equal-colored endpoints.
pub fn is_proper(graph: &Graph, f: &Coloring) -> bool {
    assert_eq!(
        f.vertex_count(),
        graph.vertex_count(),
        "coloring must cover every vertex"
    );
    graph
        .edges()
        .iter()
        .all(|e| f.color_of(e.u()) != f.color_of(e.w()))
}

/// The set of colors appearing on some monochromatic edge. Empty iff the
/// coloring is proper.
pub fn bad_colors(graph: &Graph, g: &Coloring) -> BTreeSet<usize> {
    assert_eq!(
        g.vertex_count(),
        graph.vertex_count(),
        "coloring must cover every vertex"
    );
    graph
        .edges()
        .iter()
        .filter(|e| g.color_of(e.u()) == g.color_of(e.w()))
        .map(|e| g.color_of(e.u()))
        .collect()
}

/// Iterator over all `lambda^v` colorings in lexicographic order of the
/// vector `(g(1),...,g(v))`.
pub fn enumerate_colorings(v: usize, lambda: usize) -> Colorings {
    let current = if lambda == 0 && v > 0 {
        None
    } else {
        Some(vec![0; v])
    };
    Colorings { lambda, current }
}

pub struct Colorings {
    lambda: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Colorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let cur = self.current.take()?;
        let item = Coloring::new(cur.clone());
        // Successor: increment the rightmost digit that still has room,
        // resetting everything after it.
        let mut next = cur;
        let mut i = next.len();
        while i > 0 {
            i -= 1;
            if next[i] + 1 < self.lambda {
                next[i] += 1;
                for digit in next[i + 1..].iter_mut() {
                    *digit = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(item)
    }
}

/// `lambda^v`, the size of the full coloring space, as an exact integer.
pub fn color_space_size(v: usize, lambda: usize) -> BigInt {
    num_traits::pow(BigInt::from(lambda), v)
}

/// Exact number of proper colorings by full enumeration. Refuses to run
/// when `lambda^v` exceeds `budget`; the chromatic polynomial is the
/// intended fallback.
pub fn count_proper_brute(graph: &Graph, lambda: usize, budget: u64) -> Result<BigInt, CountError> {
    let v = graph.vertex_count();
    let total = color_space_size(v, lambda);
    if total > BigInt::from(budget) {
        return Err(CountError::BudgetExceeded { total, budget });
    }
    let count = enumerate_colorings(v, lambda)
        .filter(|f| is_proper(graph, f))
        .count();
    Ok(BigInt::from(count))
}

/// Exact count by brute force when within budget, otherwise by the
/// chromatic polynomial.
pub fn count_proper_auto(graph: &Graph, lambda: usize, budget: u64) -> Result<BigInt, CountError> {
    match count_proper_brute(graph, lambda, budget) {
        Ok(n) => Ok(n),
        Err(CountError::BudgetExceeded { .. }) => {
            Ok(chromatic_polynomial(graph)?.evaluate(lambda))
        }
        Err(e) => Err(e),
    }
}

/// Chromatic polynomial with integer coefficients, index = degree.
/// Degree equals the vertex count and the leading coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    coeffs: Vec<BigInt>,
}

impl ChromaticPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients in ascending degree order.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn evaluate(&self, lambda: usize) -> BigInt {
        let x = BigInt::from(lambda);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

type MinorKey = (usize, Vec<(usize, usize)>);

fn chromatic_coeffs(
    v: usize,
    edges: &[(usize, usize)],
    memo: &mut HashMap<MinorKey, Vec<BigInt>>,
) -> Vec<BigInt> {
    if edges.is_empty() {
        let mut coeffs = vec![BigInt::zero(); v + 1];
        coeffs[v] = BigInt::one();
        return coeffs;
    }
    let key: MinorKey = (v, edges.to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    // Recurse on the lexicographically smallest edge h: P(G) = P(G-h) - P(G/h).
    let (hu, hw) = edges[0];
    let deleted = chromatic_coeffs(v, &edges[1..], memo);
    // Contract hw into hu and shift labels above hw down so the minor lives
    // on 1..=v-1; parallel edges collapse in the set.
    let mut merged: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in &edges[1..] {
        let a2 = if a == hw {
            hu
        } else if a > hw {
            a - 1
        } else {
            a
        };
        let b2 = if b == hw {
            hu
        } else if b > hw {
            b - 1
        } else {
            b
        };
        if a2 != b2 {
            merged.insert((a2.min(b2), a2.max(b2)));
        }
    }
    let contracted_edges: Vec<(usize, usize)> = merged.into_iter().collect();
    let contracted = chromatic_coeffs(v - 1, &contracted_edges, memo);
    let mut coeffs = deleted;
    for (i, c) in contracted.into_iter().enumerate() {
        coeffs[i] -= c;
    }
    memo.insert(key, coeffs.clone());
    coeffs
}

/// Chromatic polynomial by deletion-contraction, memoized on the normalized
/// edge set of each minor. Independent of the brute-force counter.
pub fn chromatic_polynomial(graph: &Graph) -> Result<ChromaticPolynomial, CountError> {
    let v = graph.vertex_count();
    if v > MAX_POLYNOMIAL_VERTICES {
        return Err(CountError::TooManyVertices {
            v,
            max: MAX_POLYNOMIAL_VERTICES,
        });
    }
    let edges: Vec<(usize, usize)> = graph.edges().iter().map(|e| e.endpoints()).collect();
    let mut memo = HashMap::new();
    let coeffs = chromatic_coeffs(v, &edges, &mut memo);
    debug_assert_eq!(coeffs.len(), v + 1);
    debug_assert!(coeffs[v].is_one());
    Ok(ChromaticPolynomial { coeffs })
}
