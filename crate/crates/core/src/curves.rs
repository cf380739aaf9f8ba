//! Curves through point sets: vanishing spaces, completeness-in-a-curve
//! tests, divisibility by the span of a curve, common-component detection
//! via resultants, and the two overload diagnostics (n+2 collinear points,
//! 2n+2 points on a conic).

use itertools::Itertools;
use num_traits::Zero;

use crate::error::Error;
use crate::independence::{eval_matrix, format_point, vanishing_dim, PointSet};
use crate::linalg::{self, QMatrix};
use crate::poly::{dim_pi, monomials, rat, Poly, Q};

/// A canonical basis of the space of degree-`n` polynomials vanishing on a
/// generating point set.
#[derive(Debug, Clone)]
pub struct CurveSpace {
    pub n: i64,
    pub basis: Vec<Poly>,
}

/// Basis of `P_{n,X} = {p of degree <= n : p vanishes on X}`, one element
/// per free column of the evaluation matrix, in the nullspace
/// canonicalization (free coefficient 1, pivot coefficients
/// back-substituted).
pub fn vanishing_space(points: &PointSet, n: i64) -> CurveSpace {
    let basis = linalg::nullspace(&eval_matrix(points, n))
        .into_iter()
        .map(|coeffs| {
            Poly::from_coeffs(n.max(0) as usize, coeffs).expect("nullspace length matches basis")
        })
        .collect();
    CurveSpace { n, basis }
}

/// First canonical basis element of the vanishing space, if any. Guaranteed
/// to exist whenever `#X <= dim_pi(k) - 1`.
pub fn curve_through_points(points: &PointSet, k: i64) -> Option<Poly> {
    vanishing_space(points, k).basis.into_iter().next()
}

/// Is every degree-`n` polynomial vanishing on `points` a multiple of
/// `sigma`? Decided by the dimension count `dim P_{n,X} = dim_pi(n - k)`
/// where `k = deg sigma`; past `k > n` the right side is 0 and the
/// criterion degenerates to requiring an `n`-poised subset. All points must
/// lie on `sigma`; `sigma` is trusted to be squarefree.
pub fn is_n_complete(points: &PointSet, sigma: &Poly, n: i64) -> Result<bool, Error> {
    if sigma.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    for pt in points.iter() {
        if !sigma.vanishes_at(pt) {
            return Err(Error::PointOffCurve(format_point(pt)));
        }
    }
    let k = sigma.effective_degree().unwrap_or(0) as i64;
    Ok(vanishing_dim(points, n) == dim_pi(n - k))
}

/// Is `p` in the linear span of `{x^i y^j * sigma : i + j <= n - m}`, for
/// `n` the degree bound of `p` and `m = deg sigma`? One rank comparison
/// decides divisibility without polynomial division.
pub fn is_in_sigma_span(p: &Poly, sigma: &Poly) -> bool {
    let n = p.degree_bound();
    let span = sigma_span_rows(sigma, n);
    if p.is_zero() {
        return true;
    }
    let without = QMatrix::from_rows(span.clone());
    let mut with_p = span;
    with_p.push(p.coeffs().to_vec());
    linalg::rank(&QMatrix::from_rows(with_p)) == linalg::rank(&without)
}

/// Coefficient vectors (in the degree-`n` basis) of `x^i y^j * sigma` for
/// all `i + j <= n - deg sigma`.
fn sigma_span_rows(sigma: &Poly, n: usize) -> Vec<Vec<Q>> {
    let sigma = sigma.compress();
    let m = sigma.effective_degree().unwrap_or(0);
    if sigma.is_zero() || m > n {
        return Vec::new();
    }
    monomials((n - m) as i64)
        .iter()
        .map(|mono| {
            let shifted = sigma
                .multiply(&Poly::monomial(mono.i, mono.j, mono.degree()).expect("degree fits"));
            shifted
                .lift(n)
                .expect("product degree within bound")
                .coeffs()
                .to_vec()
        })
        .collect()
}

/// Outcome of the common-component test, including the shear used to bring
/// both curves to full `y`-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommonComponentDetail {
    pub shares_component: bool,
    /// `t` in the unimodular change of coordinates `(x, y) -> (x + t*y, y)`.
    pub shear_t: u32,
}

/// Do the curves `p` and `q` share a nonconstant polynomial factor?
///
/// Both are sheared by the smallest natural `t` making `(x + t*y, y)` give
/// them full `y`-degree (leading `y`-coefficients become nonzero
/// constants), their contents over the ring of polynomials in `x` are split
/// off, and the `y`-resultant of the primitive parts is tested for
/// identical vanishing alongside a univariate gcd of the contents.
pub fn common_component(p: &Poly, q: &Poly) -> Result<bool, Error> {
    common_component_detail(p, q).map(|d| d.shares_component)
}

pub fn common_component_detail(p: &Poly, q: &Poly) -> Result<CommonComponentDetail, Error> {
    let dp = match p.effective_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegeneratePolynomial),
    };
    let dq = match q.effective_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegeneratePolynomial),
    };
    let p = p.compress();
    let q = q.compress();

    // Smallest natural shear giving both full y-degree. The top homogeneous
    // part evaluated at (t, 1) is a nonzero univariate polynomial in t, so
    // only finitely many t fail.
    let mut shear_t = 0u32;
    let (p, q) = loop {
        let t = rat(shear_t as i64, 1);
        let ps = p.shear_x(&t);
        let qs = q.shear_x(&t);
        if ps.y_degree() == Some(dp) && qs.y_degree() == Some(dq) {
            break (ps, qs);
        }
        shear_t += 1;
    };

    let (p_content, p_prim) = split_content(&p);
    let (q_content, q_prim) = split_content(&q);

    let content_gcd = univariate_gcd(&p_content, &q_content);
    if poly_deg(&content_gcd) >= 1 {
        return Ok(CommonComponentDetail { shares_component: true, shear_t });
    }

    let shares_component = resultant_vanishes(&p_prim, &q_prim);
    Ok(CommonComponentDetail { shares_component, shear_t })
}

// ---- univariate helpers (dense coefficient vectors, ascending powers) ----

fn poly_deg(c: &[Q]) -> i64 {
    c.iter().rposition(|v| !v.is_zero()).map_or(-1, |d| d as i64)
}

fn trim(mut c: Vec<Q>) -> Vec<Q> {
    while c.len() > 1 && c.last().map(|v| v.is_zero()) == Some(true) {
        c.pop();
    }
    c
}

fn univariate_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let db = poly_deg(b);
    debug_assert!(db >= 0);
    let mut r = a.to_vec();
    let lead = b[db as usize].clone();
    while poly_deg(&r) >= db {
        let dr = poly_deg(&r) as usize;
        let factor = &r[dr] / &lead;
        for k in 0..=db as usize {
            let delta = &factor * &b[k];
            r[dr - db as usize + k] -= delta;
        }
        r[dr] = Q::zero();
    }
    trim(r)
}

/// Monic gcd over the rationals; returns `[1]` for coprime inputs and the
/// zero polynomial only when both inputs are zero.
fn univariate_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while poly_deg(&b) >= 0 {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    let d = poly_deg(&a);
    if d >= 0 {
        let lead = a[d as usize].clone();
        a.iter().map(|c| c / &lead).collect()
    } else {
        a
    }
}

fn evaluate_univariate(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, v| acc * x + v)
}

/// Content of `p` over the polynomials in `x`: the monic gcd of the
/// `y`-coefficients. Returns `(content, primitive part)`.
fn split_content(p: &Poly) -> (Vec<Q>, Poly) {
    let dy = p.y_degree().expect("nonzero polynomial");
    let mut content = vec![Q::zero()];
    for k in 0..=dy {
        content = univariate_gcd(&content, &p.y_coefficient(k));
    }
    if poly_deg(&content) == 0 {
        return (content, p.clone());
    }
    // exact division of each y-coefficient by the content
    let terms: Vec<(usize, usize, Q)> = (0..=dy)
        .flat_map(|k| {
            let quotient = univariate_div_exact(&p.y_coefficient(k), &content);
            quotient
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (i, k, c))
                .collect::<Vec<_>>()
        })
        .collect();
    let bound = p.degree_bound();
    (content, Poly::from_terms(bound, &terms).expect("division keeps degree"))
}

fn univariate_div_exact(a: &[Q], b: &[Q]) -> Vec<Q> {
    let da = poly_deg(a);
    let db = poly_deg(b);
    if da < 0 {
        return vec![Q::zero()];
    }
    debug_assert!(db >= 0 && da >= db);
    let mut r = a.to_vec();
    let mut q = vec![Q::zero(); (da - db + 1) as usize];
    let lead = b[db as usize].clone();
    while poly_deg(&r) >= db {
        let dr = poly_deg(&r) as usize;
        let factor = &r[dr] / &lead;
        q[dr - db as usize] = factor.clone();
        for k in 0..=db as usize {
            let delta = &factor * &b[k];
            r[dr - db as usize + k] -= delta;
        }
        r[dr] = Q::zero();
    }
    debug_assert!(poly_deg(&r) < 0, "content division must be exact");
    q
}

/// Does the `y`-resultant of `p` and `q` vanish identically? The resultant
/// is a polynomial in `x` of degree at most `deg p * deg q`; it is
/// evaluated at that many plus one rational `x`-values (skipping roots of
/// either leading `y`-coefficient) and declared zero exactly when every
/// specialization is zero, by uniqueness of interpolation.
fn resultant_vanishes(p: &Poly, q: &Poly) -> bool {
    let dp = p.y_degree().expect("positive y-degree");
    let dq = q.y_degree().expect("positive y-degree");
    debug_assert!(dp >= 1 && dq >= 1);
    let p_rows: Vec<Vec<Q>> = (0..=dp).map(|k| p.y_coefficient(k)).collect();
    let q_rows: Vec<Vec<Q>> = (0..=dq).map(|k| q.y_coefficient(k)).collect();

    let bound = p.effective_degree().unwrap_or(0) * q.effective_degree().unwrap_or(0);
    let mut sampled = 0usize;
    let mut x_val = 0i64;
    while sampled <= bound {
        let x = rat(x_val, 1);
        x_val += 1;
        let p_lead = evaluate_univariate(&p_rows[dp], &x);
        let q_lead = evaluate_univariate(&q_rows[dq], &x);
        if p_lead.is_zero() || q_lead.is_zero() {
            continue;
        }
        sampled += 1;
        let pc: Vec<Q> = p_rows.iter().map(|row| evaluate_univariate(row, &x)).collect();
        let qc: Vec<Q> = q_rows.iter().map(|row| evaluate_univariate(row, &x)).collect();
        if !sylvester_determinant(&pc, &qc).is_zero() {
            return false;
        }
    }
    true
}

/// Determinant of the Sylvester matrix of two univariate polynomials given
/// by ascending coefficient vectors with nonzero leading entries.
fn sylvester_determinant(p: &[Q], q: &[Q]) -> Q {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..dq {
        let mut row = vec![Q::zero(); size];
        for (k, c) in p.iter().enumerate() {
            row[shift + dp - k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![Q::zero(); size];
        for (k, c) in q.iter().enumerate() {
            row[shift + dq - k] = c.clone();
        }
        rows.push(row);
    }
    linalg::determinant(&QMatrix::from_rows(rows))
}

/// Heuristic repeated-component diagnostic: does `p` share a component
/// with its own `y`-derivative? A repeated component always triggers this;
/// components free of `y` trigger it too (e.g. `x*y` reports true), so a
/// `true` is a flag to inspect, not a proof of a multiple component. Errors
/// when the `y`-derivative is zero or constant.
pub fn repeated_component_heuristic(p: &Poly) -> Result<bool, Error> {
    common_component(p, &p.d_dy())
}

/// A line through at least `n + 2` points of the set, together with those
/// points; `None` when no pair of points extends that far. Pairs are
/// scanned in input order and the first qualifying line wins.
pub fn find_overloaded_line(points: &PointSet, n: i64) -> Option<(Poly, PointSet)> {
    let need = (n + 2).max(0) as usize;
    let pts = points.points();
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            let line = line_through(&pts[a], &pts[b]);
            let incident: Vec<(Q, Q)> = pts
                .iter()
                .filter(|p| line.vanishes_at(p))
                .cloned()
                .collect();
            if incident.len() >= need {
                let set = PointSet::new(incident).expect("subset of a distinct set");
                return Some((line, set));
            }
        }
    }
    None
}

/// The line through two distinct points, normalized so its first nonzero
/// graded-lex coefficient is 1.
pub fn line_through(a: &(Q, Q), b: &(Q, Q)) -> Poly {
    let dx = &b.0 - &a.0;
    let dy = &b.1 - &a.1;
    // dx*(y - a_y) - dy*(x - a_x)
    let c0 = &dy * &a.0 - &dx * &a.1;
    Poly::from_terms(1, &[(0, 0, c0), (1, 0, -dy), (0, 1, dx)])
        .expect("linear terms fit")
        .normalize()
}

/// Cap on the 5-subset conic scan; the enumeration is combinatorial.
pub const CONIC_SCAN_CAP: usize = 30;

/// A (possibly reducible) conic through at least `2n + 2` points of the
/// set, with those points. Scans conic pencils of 5-point subsets in
/// lexicographic index order; the first qualifying pencil element wins.
pub fn find_overloaded_conic(
    points: &PointSet,
    n: i64,
) -> Result<Option<(Poly, PointSet)>, Error> {
    if points.len() > CONIC_SCAN_CAP {
        return Err(Error::TooManyPoints(points.len(), CONIC_SCAN_CAP));
    }
    let need = (2 * n + 2).max(0) as usize;
    let pts = points.points();
    for combo in (0..pts.len()).combinations(5) {
        let subset =
            PointSet::new(combo.iter().map(|&i| pts[i].clone()).collect()).expect("distinct");
        for conic in vanishing_space(&subset, 2).basis {
            let incident: Vec<(Q, Q)> = pts
                .iter()
                .filter(|p| conic.vanishes_at(p))
                .cloned()
                .collect();
            if incident.len() >= need {
                let set = PointSet::new(incident).expect("subset of a distinct set");
                return Ok(Some((conic, set)));
            }
        }
    }
    Ok(None)
}
