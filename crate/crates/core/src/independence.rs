//! Point-set independence and poisedness, fundamental polynomials, and
//! vanishing-space dimensions, all as exact rank computations on the
//! evaluation matrix.
//!
//! A set is `n`-independent when every point carries an `n`-fundamental
//! polynomial (value 1 there, 0 on the rest), which is the same as the
//! evaluation matrix having full row rank. It is essentially `n`-dependent
//! when no point does: every degree-`n` curve through all but one point
//! passes through the last one too.

use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{self, QMatrix};
use crate::poly::{dim_pi, format_rat, monomials, parse_rat, Poly, Q};

/// An ordered list of pairwise distinct rational plane points. Order is
/// preserved for reproducibility; every predicate in this module is
/// order-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(Q, Q)>,
}

pub fn format_point(pt: &(Q, Q)) -> String {
    format!("({}, {})", pt.0, pt.1)
}

/// A point as its pair of canonical fraction strings, the JSON wire form.
pub fn format_rat_pair(pt: &(Q, Q)) -> [String; 2] {
    [format_rat(&pt.0), format_rat(&pt.1)]
}

impl PointSet {
    pub fn new(points: Vec<(Q, Q)>) -> Result<PointSet, Error> {
        for (idx, p) in points.iter().enumerate() {
            if points[..idx].contains(p) {
                return Err(Error::DuplicatePoint(format_point(p)));
            }
        }
        Ok(PointSet { points })
    }

    pub fn empty() -> PointSet {
        PointSet { points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (Q, Q)> {
        self.points.iter()
    }

    pub fn contains(&self, pt: &(Q, Q)) -> bool {
        self.points.contains(pt)
    }

    /// The set with the point at `idx` removed.
    pub fn without_index(&self, idx: usize) -> PointSet {
        let mut pts = self.points.clone();
        pts.remove(idx);
        PointSet { points: pts }
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            points: Vec<[String; 2]>,
        }
        Repr {
            points: self
                .points
                .iter()
                .map(|(x, y)| [format_rat(x), format_rat(y)])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PointSet, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            points: Vec<[String; 2]>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let points = repr
            .points
            .iter()
            .map(|[x, y]| Ok((parse_rat(x)?, parse_rat(y)?)))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(D::Error::custom)?;
        PointSet::new(points).map_err(D::Error::custom)
    }
}

/// The `#X x dim_pi(n)` matrix of monomial values: entry `(r, c)` is the
/// `c`-th graded-lex monomial evaluated at the `r`-th point. Degrees below
/// zero give a matrix with zero columns.
pub fn eval_matrix(points: &PointSet, n: i64) -> QMatrix {
    if points.is_empty() {
        return QMatrix::zeros(0, dim_pi(n));
    }
    let basis = monomials(n);
    QMatrix::from_rows(
        points
            .iter()
            .map(|pt| basis.iter().map(|m| m.evaluate(pt)).collect())
            .collect(),
    )
}

pub fn is_n_independent(points: &PointSet, n: i64) -> bool {
    linalg::rank(&eval_matrix(points, n)) == points.len()
}

pub fn is_n_poised(points: &PointSet, n: i64) -> bool {
    points.len() == dim_pi(n) && is_n_independent(points, n)
}

/// The `n`-fundamental polynomial of `target` with respect to `points`:
/// value 1 at `target`, 0 at every other point; free coefficients zeroed.
/// `None` when no such polynomial exists. Rejects `target` outside the set.
pub fn fundamental_polynomial(
    target: &(Q, Q),
    points: &PointSet,
    n: i64,
) -> Result<Option<Poly>, Error> {
    if !points.contains(target) {
        return Err(Error::PointNotInSet(format_point(target)));
    }
    let rhs: Vec<Q> = points
        .iter()
        .map(|p| if p == target { Q::one() } else { Q::zero() })
        .collect();
    interpolate(points, &rhs, n)
}

/// Is every degree-`k` curve through all but one point of `points` forced
/// through the remaining point as well? Decided per removed point by rank
/// equality `rank(E(X \ {A})) = rank(E(X))`, which holds exactly when `A`
/// lacks a separating polynomial. Vacuously true at `k = -1`.
pub fn is_essentially_dependent(points: &PointSet, k: i64) -> bool {
    if k < 0 {
        return true;
    }
    let full_rank = linalg::rank(&eval_matrix(points, k));
    (0..points.len())
        .all(|idx| linalg::rank(&eval_matrix(&points.without_index(idx), k)) == full_rank)
}

/// First point (in input order) whose removal drops the evaluation-matrix
/// rank, i.e. a point owning a separating degree-`k` polynomial. `None`
/// when the set is essentially `k`-dependent.
pub fn separable_point(points: &PointSet, k: i64) -> Option<usize> {
    if k < 0 {
        return None;
    }
    let full_rank = linalg::rank(&eval_matrix(points, k));
    (0..points.len())
        .find(|&idx| linalg::rank(&eval_matrix(&points.without_index(idx), k)) < full_rank)
}

/// Greedy scan in input order, keeping each point that raises the
/// evaluation-matrix rank. The result is `n`-independent and maximal.
pub fn max_independent_subset(points: &PointSet, n: i64) -> PointSet {
    let mut kept: Vec<(Q, Q)> = Vec::new();
    let mut current_rank = 0usize;
    for pt in points.iter() {
        let mut candidate = kept.clone();
        candidate.push(pt.clone());
        let r = linalg::rank(&eval_matrix(
            &PointSet { points: candidate.clone() },
            n,
        ));
        if r > current_rank {
            kept = candidate;
            current_rank = r;
        }
    }
    PointSet { points: kept }
}

/// `dim P_{n,X}`: the dimension of the space of degree-`n` polynomials
/// vanishing on all of `points`.
pub fn vanishing_dim(points: &PointSet, n: i64) -> usize {
    dim_pi(n) - linalg::rank(&eval_matrix(points, n))
}

/// Some polynomial in the degree-`n` space matching the data, with free
/// coefficients zeroed; unique when the set is `n`-poised. `None` when the
/// interpolation conditions are inconsistent.
pub fn interpolate(points: &PointSet, values: &[Q], n: i64) -> Result<Option<Poly>, Error> {
    if values.len() != points.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            got: values.len(),
        });
    }
    if n < 0 {
        // the degree -1 space is {0}: solvable only for all-zero data
        return Ok(values.iter().all(|v| v.is_zero()).then(|| Poly::zero(0)));
    }
    let m = eval_matrix(points, n);
    Ok(linalg::solve(&m, values).map(|coeffs| {
        Poly::from_coeffs(n as usize, coeffs).expect("solution length matches basis")
    }))
}

/// Summary of the section-1 diagnostics for one point set at one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub n: i64,
    pub independent: bool,
    pub poised: bool,
    pub essentially_dependent: bool,
    /// A point lacking a fundamental polynomial, present when dependent.
    pub witness_point: Option<[String; 2]>,
    pub max_independent_subset: PointSet,
    pub vanishing_dim: usize,
}

pub fn independence_report(points: &PointSet, n: i64) -> IndependenceReport {
    let independent = is_n_independent(points, n);
    let witness_point = if independent {
        None
    } else {
        let full_rank = linalg::rank(&eval_matrix(points, n));
        (0..points.len())
            .find(|&idx| {
                linalg::rank(&eval_matrix(&points.without_index(idx), n)) == full_rank
            })
            .map(|idx| format_rat_pair(&points.points()[idx]))
    };
    IndependenceReport {
        n,
        independent,
        poised: is_n_poised(points, n),
        essentially_dependent: is_essentially_dependent(points, n),
        witness_point,
        max_independent_subset: max_independent_subset(points, n),
        vanishing_dim: vanishing_dim(points, n),
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, pt) in self.points.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_point(pt))?;
        }
        write!(f, "}}")
    }
}
