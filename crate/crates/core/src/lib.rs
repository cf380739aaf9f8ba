//! Decide whether a set of `mn` rational plane points is the intersection
//! set of two algebraic curves of degrees `m` and `n`, construct explicit
//! witness curves when it is, and produce auditable certificates when it is
//! not.
//!
//! Everything runs over exact arbitrary-precision rationals; there is no
//! floating point anywhere. The toolkit underneath is exposed in full:
//!
//! * [`poly`] - rational scalars, graded-lex monomial bases, dense
//!   bivariate polynomial arithmetic;
//! * [`linalg`] - exact rank / RREF / nullspace / solve via fraction-free
//!   elimination;
//! * [`independence`] - `n`-poised and `n`-independent point sets,
//!   fundamental polynomials, vanishing-space dimensions;
//! * [`curves`] - vanishing spaces, completeness-in-a-curve tests,
//!   span-divisibility, resultant-based common-component detection, and
//!   overload diagnostics;
//! * [`decision`] - the decision procedure with witnesses and certificates,
//!   plus the Cayley-Bacharach report and the `A*sigma_m + B*sigma_n`
//!   decomposition;
//! * [`generators`] - seeded, reproducible scenario fabrication for
//!   positives and adversarial negatives.

pub mod curves;
pub mod decision;
pub mod error;
pub mod generators;
pub mod independence;
pub mod linalg;
pub mod poly;

pub use decision::{
    condition_a, condition_b, decide_intersection_set, noether_decompose,
    verify_cayley_bacharach, verify_intersection_set, CayleyBacharachReport, Decision, Failure,
};
pub use error::Error;
pub use independence::{IndependenceReport, PointSet};
pub use poly::{Poly, Q};
