//! Exact rational scalars, graded-lex monomial bases for the space of
//! bivariate polynomials of total degree at most `n`, and dense polynomial
//! arithmetic on top of them.
//!
//! Everything downstream (evaluation matrices, vanishing spaces, witness
//! curves) is phrased in terms of the coefficient vectors defined here, so
//! the monomial order is fixed once and for all: monomials are sorted by
//! total degree ascending, then by x-exponent descending. For `n = 2` the
//! basis reads `1, x, y, x^2, xy, y^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The ground field: arbitrary-precision rationals, always stored reduced
/// with a positive denominator. All arithmetic is exact.
pub type Q = BigRational;

/// Rational from an integer pair, reduced canonically.
pub fn rat(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a decimal-free fraction string: `"3/7"`, `"-2"`, `"0"`.
pub fn parse_rat(s: &str) -> Result<Q, Error> {
    BigRational::from_str(s).map_err(|_| Error::BadFraction(s.to_string()))
}

/// Canonical string form of a rational: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rat(q: &Q) -> String {
    q.to_string()
}

/// Dimension of the space of bivariate polynomials of total degree `<= n`.
///
/// `(n+1)(n+2)/2` for `n >= 0`; `0` for every negative `n` (the degree `-1`
/// space is `{0}` by convention, which keeps `kappa = m + n - 3` uniformly
/// handled down in the decision procedure).
pub fn dim_pi(n: i64) -> usize {
    if n < 0 {
        0
    } else {
        ((n + 1) * (n + 2) / 2) as usize
    }
}

/// `dim_pi(n) - dim_pi(n - k)`: the number of independent conditions a
/// degree-`k` curve can absorb at degree `n`. Equals `k(2n - k + 3)/2`
/// whenever `k <= n + 2`.
pub fn d_func(k: i64, n: i64) -> usize {
    debug_assert!(k >= 1);
    dim_pi(n) - dim_pi(n - k)
}

/// A monomial `x^i y^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: usize,
    pub j: usize,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.i + self.j
    }

    /// Position of this monomial in the graded-lex order.
    pub fn index(&self) -> usize {
        let d = self.degree();
        d * (d + 1) / 2 + (d - self.i)
    }

    /// Inverse of [`Monomial::index`].
    pub fn from_index(idx: usize) -> Monomial {
        let mut d = 0usize;
        while (d + 1) * (d + 2) / 2 <= idx {
            d += 1;
        }
        let pos = idx - d * (d + 1) / 2;
        Monomial { i: d - pos, j: pos }
    }

    /// Exact value `x^i y^j` at a rational point.
    pub fn evaluate(&self, pt: &(Q, Q)) -> Q {
        pow(&pt.0, self.i) * pow(&pt.1, self.j)
    }
}

fn pow(base: &Q, exp: usize) -> Q {
    let mut out = Q::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// All monomials of total degree `<= n` in graded-lex order.
pub fn monomials(n: i64) -> Vec<Monomial> {
    (0..dim_pi(n)).map(Monomial::from_index).collect()
}

/// A bivariate polynomial of total degree at most `degree_bound`, stored as
/// the dense coefficient vector over the graded-lex basis.
#[derive(Debug, Clone)]
pub struct Poly {
    degree_bound: usize,
    coeffs: Vec<Q>,
}

impl Poly {
    /// The zero polynomial in the degree-`n` space.
    pub fn zero(n: usize) -> Poly {
        Poly {
            degree_bound: n,
            coeffs: vec![Q::zero(); dim_pi(n as i64)],
        }
    }

    /// Constant polynomial (degree bound 0).
    pub fn constant(c: Q) -> Poly {
        Poly {
            degree_bound: 0,
            coeffs: vec![c],
        }
    }

    /// The basis monomial `x^i y^j` inside the degree-`n` space; its single
    /// nonzero coefficient is 1.
    pub fn monomial(i: usize, j: usize, n: usize) -> Result<Poly, Error> {
        if i + j > n {
            return Err(Error::DegreeBoundTooSmall { needed: i + j, bound: n });
        }
        let mut p = Poly::zero(n);
        p.coeffs[Monomial { i, j }.index()] = Q::one();
        Ok(p)
    }

    /// Build from explicit `(i, j, coefficient)` terms.
    pub fn from_terms(n: usize, terms: &[(usize, usize, Q)]) -> Result<Poly, Error> {
        let mut p = Poly::zero(n);
        for (i, j, c) in terms {
            if i + j > n {
                return Err(Error::DegreeBoundTooSmall { needed: i + j, bound: n });
            }
            p.coeffs[Monomial { i: *i, j: *j }.index()] += c;
        }
        Ok(p)
    }

    /// Wrap a raw coefficient vector of length `dim_pi(n)`.
    pub fn from_coeffs(n: usize, coeffs: Vec<Q>) -> Result<Poly, Error> {
        if coeffs.len() != dim_pi(n as i64) {
            return Err(Error::CoefficientLength {
                expected: dim_pi(n as i64),
                got: coeffs.len(),
            });
        }
        Ok(Poly { degree_bound: n, coeffs })
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        let m = Monomial { i, j };
        if m.degree() > self.degree_bound {
            Q::zero()
        } else {
            self.coeffs[m.index()].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest total degree carrying a nonzero coefficient; `None` for the
    /// zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, _)| Monomial::from_index(idx).degree())
            .max()
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, pt: &(Q, Q)) -> Q {
        // Build x- and y-power tables once instead of re-multiplying per term.
        let n = self.degree_bound;
        let mut xp = Vec::with_capacity(n + 1);
        let mut yp = Vec::with_capacity(n + 1);
        xp.push(Q::one());
        yp.push(Q::one());
        for k in 1..=n {
            xp.push(&xp[k - 1] * &pt.0);
            yp.push(&yp[k - 1] * &pt.1);
        }
        let mut acc = Q::zero();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let m = Monomial::from_index(idx);
                acc += c * &xp[m.i] * &yp[m.j];
            }
        }
        acc
    }

    /// Vanishes at the point?
    pub fn vanishes_at(&self, pt: &(Q, Q)) -> bool {
        self.evaluate(pt).is_zero()
    }

    /// Exact product; the degree bound of the result is the sum of bounds.
    pub fn multiply(&self, other: &Poly) -> Poly {
        let n = self.degree_bound + other.degree_bound;
        let mut out = Poly::zero(n);
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = Monomial::from_index(ia);
            for (ib, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = Monomial::from_index(ib);
                let m = Monomial { i: ma.i + mb.i, j: ma.j + mb.j };
                out.coeffs[m.index()] += ca * cb;
            }
        }
        out
    }

    /// Re-index into the degree-`n` basis. Rejects `n` below the effective
    /// degree (coefficients would be lost).
    pub fn lift(&self, n: usize) -> Result<Poly, Error> {
        if let Some(d) = self.effective_degree() {
            if n < d {
                return Err(Error::DegreeBoundTooSmall { needed: d, bound: n });
            }
        }
        let mut out = Poly::zero(n);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[Monomial::from_index(idx).index()] = c.clone();
            }
        }
        Ok(out)
    }

    /// Re-index down to the effective degree (0 for the zero polynomial).
    pub fn compress(&self) -> Poly {
        let d = self.effective_degree().unwrap_or(0);
        let mut out = Poly::zero(d);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[idx] = c.clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.degree_bound.max(other.degree_bound);
        let mut out = Poly::zero(n);
        for (idx, c) in self.coeffs.iter().enumerate() {
            out.coeffs[idx] += c;
        }
        for (idx, c) in other.coeffs.iter().enumerate() {
            out.coeffs[idx] += c;
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly {
            degree_bound: self.degree_bound,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Scale so the first nonzero coefficient in graded-lex order is 1.
    /// The zero polynomial is returned unchanged.
    pub fn normalize(&self) -> Poly {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    /// Substitute `x -> x + t*y`. A unimodular shear: total degree and
    /// factorization structure are preserved.
    pub fn shear_x(&self, t: &Q) -> Poly {
        let mut out = Poly::zero(self.degree_bound);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = Monomial::from_index(idx);
            // (x + t y)^i = sum_l C(i,l) t^l x^(i-l) y^l
            let mut binom = Q::one();
            let mut t_pow = Q::one();
            for l in 0..=m.i {
                let term = Monomial { i: m.i - l, j: m.j + l };
                out.coeffs[term.index()] += c * &binom * &t_pow;
                if l < m.i {
                    binom *= rat((m.i - l) as i64, (l + 1) as i64);
                    t_pow *= t;
                }
            }
        }
        out
    }

    /// Partial derivative with respect to `y`.
    pub fn d_dy(&self) -> Poly {
        let mut out = Poly::zero(self.degree_bound.saturating_sub(1));
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = Monomial::from_index(idx);
            if m.j > 0 {
                let term = Monomial { i: m.i, j: m.j - 1 };
                out.coeffs[term.index()] += c * rat(m.j as i64, 1);
            }
        }
        out
    }

    /// Degree in `y` alone; `None` for the zero polynomial.
    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, _)| Monomial::from_index(idx).j)
            .max()
    }

    /// Coefficient of `y^k` as a univariate polynomial in `x`
    /// (dense, ascending powers of `x`).
    pub fn y_coefficient(&self, k: usize) -> Vec<Q> {
        if k > self.degree_bound {
            return vec![];
        }
        let mut out = vec![Q::zero(); self.degree_bound - k + 1];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let m = Monomial::from_index(idx);
                if m.j == k {
                    out[m.i] = c.clone();
                }
            }
        }
        while out.len() > 1 && out.last().map(|c| c.is_zero()) == Some(true) {
            out.pop();
        }
        out
    }
}

// Equality is semantic: two representations of the same polynomial compare
// equal even when their degree bounds differ.
impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        let long = self.coeffs.len().max(other.coeffs.len());
        (0..long).all(|idx| {
            let a = self.coeffs.get(idx).cloned().unwrap_or_else(Q::zero);
            let b = other.coeffs.get(idx).cloned().unwrap_or_else(Q::zero);
            a == b
        })
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    /// Human form: degree blocks highest first, `x`-major inside a block.
    /// `x^2 - x`, `-x - y + 1`, `3/2*x*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let order = (0..=self.degree_bound)
            .rev()
            .flat_map(|d| (0..=d).map(move |pos| d * (d + 1) / 2 + pos));
        for idx in order {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let m = Monomial::from_index(idx);
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed_coeff = false;
            if !mag.is_one() || m.degree() == 0 {
                write!(f, "{}", mag)?;
                printed_coeff = true;
            }
            for (var, e) in [("x", m.i), ("y", m.j)] {
                if e == 0 {
                    continue;
                }
                if printed_coeff {
                    write!(f, "*")?;
                }
                printed_coeff = true;
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: usize,
    j: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    degree: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let m = Monomial::from_index(idx);
                TermRepr { i: m.i, j: m.j, c: format_rat(c) }
            })
            .collect();
        PolyRepr { degree: self.degree_bound, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Poly, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = Poly::zero(repr.degree);
        for t in &repr.terms {
            if t.i + t.j > repr.degree {
                return Err(D::Error::custom(format!(
                    "term x^{}y^{} exceeds stated degree {}",
                    t.i, t.j, repr.degree
                )));
            }
            let c = parse_rat(&t.c).map_err(D::Error::custom)?;
            p.coeffs[Monomial { i: t.i, j: t.j }.index()] += &c;
        }
        Ok(p)
    }
}
