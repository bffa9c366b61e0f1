//! Exact-rational evaluation of three upper bounds on the number of proper
//! lambda-colorings: the Liu-Murty bound `lambda^v (lambda-1)/e`, the Klazar
//! bound `lambda^v (lambda-1)/(e+lambda-1)`, and the Lazebnik bound
//! `lambda^v * A` with A a minimum of three terms. Degenerate inputs follow
//! the convention that `0/0` reads as 1 (only reachable at `e=0, lambda=1`).
//!
//! Everything here is exact: bounds are big-integer rationals in lowest
//! terms and comparisons against counts never touch floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coloring::color_space_size;
use crate::graph::Graph;

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn lambda_pow_v(v: usize, lambda: usize) -> BigRational {
    BigRational::from_integer(color_space_size(v, lambda))
}

/// `lambda^v * (lambda-1)/e`.
///
/// Not defined when `e = 0` and `lambda >= 2`; `None` marks that case.
/// At `e = 0, lambda = 1` the `0/0 := 1` convention gives exactly 1.
pub fn liu_murty_bound(v: usize, e: usize, lambda: usize) -> Option<BigRational> {
    assert!(v >= 1 && lambda >= 1);
    if e == 0 {
        return if lambda == 1 {
            Some(BigRational::one())
        } else {
            None
        };
    }
    Some(lambda_pow_v(v, lambda) * ratio(BigInt::from(lambda - 1), BigInt::from(e)))
}

/// `lambda^v * (lambda-1)/(e+lambda-1)`, with `0/0 := 1` at
/// `e = 0, lambda = 1`. Total: every input in range has an exact value.
pub fn klazar_bound(v: usize, e: usize, lambda: usize) -> BigRational {
    assert!(v >= 1 && lambda >= 1);
    if e == 0 && lambda == 1 {
        return BigRational::one();
    }
    lambda_pow_v(v, lambda) * ratio(BigInt::from(lambda - 1), BigInt::from(e + lambda - 1))
}

/// Smallest nonnegative integer `m` with `m(m+1)/2 >= e`, computed in pure
/// integer arithmetic. Equals `ceil(sqrt(2e + 1/4) - 1/2)`: the two agree
/// because `m >= sqrt(2e+1/4) - 1/2` iff `m(m+1) >= 2e`.
pub fn lazebnik_exponent(e: u64) -> u64 {
    let e = e as u128;
    let mut m = ((8 * e + 1).isqrt() - 1) / 2;
    while m * (m + 1) / 2 < e {
        m += 1;
    }
    while m > 0 && (m - 1) * m / 2 >= e {
        m -= 1;
    }
    m as u64
}

/// The three terms whose minimum `A` bounds the proper fraction of the
/// coloring space, so the count is at most `lambda^v * A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazebnikBound {
    pub terms: [BigRational; 3],
    pub a: BigRational,
}

/// Evaluates `((lambda-1)/lambda)^m`, `1 - e/lambda + C(e,2)/lambda^2`, and
/// `(lambda-1)/(e+lambda-1)` exactly, plus their minimum. At `lambda = 1`
/// the first two terms are evaluated literally (`0^0 = 1`) and the third
/// follows the same `0/0 := 1` convention as the Klazar bound.
pub fn lazebnik_bound(v: usize, e: usize, lambda: usize) -> LazebnikBound {
    assert!(v >= 1 && lambda >= 1);
    let m = lazebnik_exponent(e as u64) as usize;
    let term1 = ratio(
        num_traits::pow(BigInt::from(lambda - 1), m),
        num_traits::pow(BigInt::from(lambda), m),
    );
    let e_big = BigInt::from(e);
    let choose2 = (&e_big * (&e_big - BigInt::one())) / BigInt::from(2);
    let term2 = BigRational::one() - ratio(e_big, BigInt::from(lambda))
        + ratio(choose2, BigInt::from(lambda * lambda));
    let term3 = if e == 0 && lambda == 1 {
        BigRational::one()
    } else {
        ratio(BigInt::from(lambda - 1), BigInt::from(e + lambda - 1))
    };
    let a = term1.clone().min(term2.clone()).min(term3.clone());
    LazebnikBound {
        terms: [term1, term2, term3],
        a,
    }
}

impl LazebnikBound {
    /// `lambda^v * A`, the resulting bound on the count.
    pub fn count_bound(&self, v: usize, lambda: usize) -> BigRational {
        lambda_pow_v(v, lambda) * &self.a
    }
}

/// All three bounds for one `(graph, lambda)` instance, with an optional
/// exact count to check them against.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub v: usize,
    pub e: usize,
    pub lambda: usize,
    /// `None` when not applicable (`e = 0`, `lambda >= 2`).
    pub liu_murty: Option<BigRational>,
    pub klazar: BigRational,
    pub lazebnik_terms: [BigRational; 3],
    pub lazebnik_a: BigRational,
    pub proper_count: Option<BigInt>,
    /// `count <= bound` for every applicable bound; `None` without a count.
    pub all_bounds_hold: Option<bool>,
}

impl BoundReport {
    pub fn lazebnik_count_bound(&self) -> BigRational {
        lambda_pow_v(self.v, self.lambda) * &self.lazebnik_a
    }
}

/// Evaluates all bounds for `(graph, lambda)` and, when a count is given,
/// decides `count <= bound` exactly for each applicable bound.
pub fn compare_bounds(graph: &Graph, lambda: usize, proper_count: Option<BigInt>) -> BoundReport {
    let v = graph.vertex_count();
    let e = graph.edge_count();
    let liu_murty = liu_murty_bound(v, e, lambda);
    let klazar = klazar_bound(v, e, lambda);
    let lazebnik = lazebnik_bound(v, e, lambda);
    let lazebnik_count_bound = lazebnik.count_bound(v, lambda);
    let all_bounds_hold = proper_count.as_ref().map(|count| {
        let count = BigRational::from_integer(count.clone());
        count <= klazar
            && count <= lazebnik_count_bound
            && liu_murty.as_ref().is_none_or(|b| &count <= b)
    });
    BoundReport {
        v,
        e,
        lambda,
        liu_murty,
        klazar,
        lazebnik_terms: lazebnik.terms,
        lazebnik_a: lazebnik.a,
        proper_count,
        all_bounds_hold,
    }
}

/// Renders a rational as `p/q` with the denominator always explicit.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Display-only decimal rendering with fixed precision, rounded half away
/// from zero. Exact comparisons never use this.
pub fn rational_decimal(r: &BigRational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let numer = r.numer().abs();
    let denom = r.denom().clone();
    let scaled = (&numer * &scale * BigInt::from(2) + &denom) / (&denom * BigInt::from(2));
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if r.numer().is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits as usize
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        ratio(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn liu_murty_examples() {
        assert_eq!(liu_murty_bound(2, 1, 2), Some(rat(4, 1)));
        assert_eq!(liu_murty_bound(3, 3, 3), Some(rat(18, 1)));
        // 0/0 read as 1, scaled by 1^3
        assert_eq!(liu_murty_bound(3, 0, 1), Some(rat(1, 1)));
        assert_eq!(liu_murty_bound(3, 0, 2), None);
    }

    #[test]
    fn klazar_examples() {
        assert_eq!(klazar_bound(2, 1, 2), rat(2, 1));
        assert_eq!(klazar_bound(3, 3, 3), rat(54, 5));
        assert_eq!(klazar_bound(3, 0, 2), rat(8, 1));
        assert_eq!(klazar_bound(3, 0, 1), rat(1, 1));
        assert_eq!(klazar_bound(3, 2, 1), rat(0, 1));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(lazebnik_exponent(0), 0);
        assert_eq!(lazebnik_exponent(1), 1);
        assert_eq!(lazebnik_exponent(3), 2);
        assert_eq!(lazebnik_exponent(4), 3);
        assert_eq!(lazebnik_exponent(6), 3);
        assert_eq!(lazebnik_exponent(7), 4);
    }

    #[test]
    fn lazebnik_examples() {
        let b = lazebnik_bound(2, 1, 2);
        assert_eq!(b.terms, [rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(b.a, rat(1, 2));
        assert_eq!(b.count_bound(2, 2), rat(2, 1));

        let b = lazebnik_bound(3, 3, 3);
        assert_eq!(b.terms, [rat(4, 9), rat(1, 3), rat(2, 5)]);
        assert_eq!(b.a, rat(1, 3));
        assert_eq!(b.count_bound(3, 3), rat(9, 1));

        let b = lazebnik_bound(4, 0, 2);
        assert_eq!(b.terms, [rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(b.a, rat(1, 1));
        assert_eq!(b.count_bound(4, 2), rat(16, 1));
    }

    #[test]
    fn lazebnik_at_one_color_is_literal() {
        // m = 0 keeps term1 at 0^0 = 1; with edges term1 becomes 0
        let b = lazebnik_bound(3, 0, 1);
        assert_eq!(b.terms[0], rat(1, 1));
        assert_eq!(b.terms[2], rat(1, 1));
        let b = lazebnik_bound(3, 3, 1);
        assert_eq!(b.terms, [rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(b.a, rat(0, 1));
    }

    #[test]
    fn compare_bounds_examples() {
        let k2 = Graph::new(2, &[(1, 2)]).unwrap();
        let r = compare_bounds(&k2, 2, Some(BigInt::from(2)));
        assert_eq!(r.liu_murty, Some(rat(4, 1)));
        assert_eq!(r.klazar, rat(2, 1));
        assert_eq!(r.lazebnik_count_bound(), rat(2, 1));
        assert_eq!(r.all_bounds_hold, Some(true));

        let k3 = Graph::complete(3).unwrap();
        let r = compare_bounds(&k3, 3, Some(BigInt::from(6)));
        assert_eq!(r.liu_murty, Some(rat(18, 1)));
        assert_eq!(r.klazar, rat(54, 5));
        assert_eq!(r.lazebnik_count_bound(), rat(9, 1));
        assert_eq!(r.all_bounds_hold, Some(true));

        let edgeless = Graph::new(3, &[]).unwrap();
        let r = compare_bounds(&edgeless, 2, Some(BigInt::from(8)));
        assert_eq!(r.klazar, rat(8, 1));
        assert_eq!(r.liu_murty, None);
        assert_eq!(r.all_bounds_hold, Some(true));

        let r = compare_bounds(&k3, 2, None);
        assert_eq!(r.all_bounds_hold, None);
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&rat(54, 5)), "54/5");
        assert_eq!(format_rational(&rat(2, 1)), "2/1");
        assert_eq!(format_rational(&rat(4, 8)), "1/2");
        assert_eq!(rational_decimal(&rat(54, 5), 6), "10.800000");
        assert_eq!(rational_decimal(&rat(8, 3), 6), "2.666667");
        assert_eq!(rational_decimal(&rat(0, 1), 6), "0.000000");
        assert_eq!(rational_decimal(&rat(-1, 3), 4), "-0.3333");
    }
}
