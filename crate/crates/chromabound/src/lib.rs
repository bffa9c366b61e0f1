//! Exact machinery around proper graph colorings on small graphs: two
//! independent counters (brute force and chromatic polynomial), exact
//! rational evaluation of three upper bounds on the count, and an
//! executable injection between (edge, proper coloring) pairs and
//! (color, improper coloring) pairs whose injectivity and image
//! multiplicity yield the counting inequality behind the sharpest of the
//! bounds. Everything is deterministic and exhaustively checkable at desk
//! scale.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod graph;
pub mod injection;

pub use bounds::{
    compare_bounds, format_rational, klazar_bound, lazebnik_bound, lazebnik_exponent,
    liu_murty_bound, rational_decimal, BoundReport, LazebnikBound,
};
pub use coloring::{
    bad_colors, chromatic_polynomial, color_space_size, count_proper_auto, count_proper_brute,
    enumerate_colorings, is_proper, ChromaticPolynomial, Coloring, CountError, DEFAULT_BUDGET,
    MAX_POLYNOMIAL_VERTICES,
};
pub use graph::{Edge, Family, Forest, ForestError, Graph, GraphError, Subgraph};
pub use injection::{
    apply_injection, image_multiplicity, invert_injection, recolor_component, verify_theorem,
    Counterexample, CounterexampleKind, DomainElem, ImageElem, InjectionError,
    VerificationReport, VerifyError,
};
