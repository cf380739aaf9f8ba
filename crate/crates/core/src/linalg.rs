//! Exact linear algebra over the rationals: reduced row echelon form, rank,
//! nullspace bases, and linear solves.
//!
//! Rows are first scaled to integers, then eliminated fraction-free
//! (Bareiss): intermediate entries stay minors of the scaled matrix, which
//! bounds coefficient growth. Back-substitution to the unique RREF happens
//! in rational arithmetic afterwards. Pivoting takes the first row with a
//! nonzero entry in the current column; arithmetic is exact, so determinism
//! beats magnitude concerns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Q;

/// A dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            entries: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from small integers, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Q::from(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.entries[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut Q {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        out
    }

    /// Append a column on the right (for augmented systems).
    fn augment(&self, b: &[Q]) -> QMatrix {
        debug_assert_eq!(b.len(), self.rows);
        let mut out = QMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(r, c) = self.get(r, c).clone();
            }
            *out.get_mut(r, self.cols) = b[r].clone();
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }
}

/// Clear denominators row by row: multiply each row by the lcm of its
/// entry denominators. Row scaling by a nonzero constant preserves the
/// row space, nullspace, and RREF.
fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let lcm = m
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            m.row(r)
                .iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the integer row echelon form
/// and the pivot columns. Entries after step k are (signed) minors of the
/// input bordered by the pivot rows and columns, so the division by the
/// previous pivot is exact.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (quot, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination lost exactness");
                a[i][j] = quot;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// The unique reduced row echelon form together with its pivot columns.
/// Zero rows sink to the bottom; pivot entries are 1 with zeros above.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let (ech, pivots) = bareiss_echelon(integer_rows(m), m.cols());
    let mut out = QMatrix::zeros(m.rows(), m.cols());
    for (r, &pc) in pivots.iter().enumerate() {
        let inv = BigRational::from(ech[r][pc].clone()).recip();
        for c in pc..m.cols() {
            *out.get_mut(r, c) = BigRational::from(ech[r][c].clone()) * &inv;
        }
    }
    // eliminate above each pivot, last pivot first
    for (r, &pc) in pivots.iter().enumerate().rev() {
        for upper in 0..r {
            let factor = out.get(upper, pc).clone();
            if factor.is_zero() {
                continue;
            }
            for c in pc..m.cols() {
                let delta = &factor * out.get(r, c);
                *out.get_mut(upper, c) -= delta;
            }
        }
    }
    (out, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    bareiss_echelon(integer_rows(m), m.cols()).1.len()
}

/// Canonical basis of `{v : Mv = 0}`: one vector per free column in
/// ascending column order, with the free-column entry set to 1 and the
/// pivot entries back-substituted from the RREF.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(m);
    let mut basis = Vec::with_capacity(m.cols() - pivots.len());
    let mut piv_iter = pivots.iter().copied().peekable();
    let mut free_cols = Vec::new();
    for c in 0..m.cols() {
        if piv_iter.peek() == Some(&c) {
            piv_iter.next();
        } else {
            free_cols.push(c);
        }
    }
    for f in free_cols {
        let mut v = vec![Q::zero(); m.cols()];
        v[f] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, f).clone();
        }
        basis.push(v);
    }
    basis
}

/// One exact solution of `Mv = b` with free variables set to 0, or `None`
/// when the system is inconsistent.
pub fn solve(m: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let (r, pivots) = rref(&m.augment(b));
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut v = vec![Q::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = r.get(row, m.cols()).clone();
    }
    Some(v)
}

/// Exact determinant of a square matrix via fraction-free elimination.
pub fn determinant(m: &QMatrix) -> Q {
    assert_eq!(m.rows(), m.cols(), "determinant requires a square matrix");
    let n = m.rows();
    if n == 0 {
        return Q::one();
    }
    // Track the scaling applied per row and the sign from swaps.
    let mut scale = Q::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let lcm = m
            .row(r)
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        scale *= BigRational::from(lcm.clone());
        a.push(m.row(r).iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(c, p);
            sign = -sign;
        }
        for i in (c + 1)..n {
            for j in (c + 1)..n {
                let num = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                let (quot, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination lost exactness");
                a[i][j] = quot;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    let det_scaled = BigRational::from(prev);
    let det = det_scaled / scale;
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn vecq(vals: &[i64]) -> Vec<Q> {
        vals.iter().map(|&v| rat(v, 1)).collect()
    }

    #[test]
    fn rref_identity_fixed() {
        let m = QMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let (r, pivots) = rref(&m);
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let m = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = rref(&m);
        assert_eq!(r, QMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_permutation() {
        let m = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let (r, pivots) = rref(&m);
        assert_eq!(r, QMatrix::identity(2));
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&QMatrix::identity(4)), 4);
        // three collinear points at degree 1
        let m = QMatrix::from_i64(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&QMatrix::identity(2)).is_empty());

        let m = QMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(nullspace(&m), vec![vecq(&[-1, 1])]);

        let z = QMatrix::zeros(1, 2);
        assert_eq!(nullspace(&z), vec![vecq(&[1, 0]), vecq(&[0, 1])]);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = QMatrix::from_i64(&[&[2, 3, 5, 7], &[11, 13, 17, 19], &[13, 16, 22, 26]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), m.cols() - rank(&m));
        for v in &basis {
            assert!(m.apply(v).iter().all(|e| e.is_zero()));
        }
        // basis members are linearly independent
        let stacked = QMatrix::from_rows(basis);
        assert_eq!(rank(&stacked), stacked.rows());
    }

    #[test]
    fn solve_examples() {
        let id = QMatrix::identity(2);
        assert_eq!(solve(&id, &vecq(&[1, 2])), Some(vecq(&[1, 2])));

        let m = QMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(solve(&m, &vecq(&[3])), Some(vecq(&[3, 0])));

        let inconsistent = QMatrix::from_i64(&[&[1], &[1]]);
        assert_eq!(solve(&inconsistent, &vecq(&[0, 1])), None);
    }

    #[test]
    fn solve_with_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(1, 7)],
        ]);
        let b = vec![rat(1, 1), rat(2, 1)];
        let v = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&v), b);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&QMatrix::identity(3)), rat(1, 1));
        let m = QMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&m), rat(1, 1));
        let s = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&s), rat(-1, 1));
        let singular = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&singular), rat(0, 1));
        let frac = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(determinant(&frac), rat(1, 60));
    }

    #[test]
    fn rank_transpose_agrees() {
        let m = QMatrix::from_i64(&[
            &[1, 2, 3, 4, 5],
            &[2, 4, 6, 8, 10],
            &[0, 1, 0, 1, 0],
            &[1, 3, 3, 5, 5],
        ]);
        assert_eq!(rank(&m), rank(&m.transpose()));
    }

    /// Plain rational Gauss-Jordan, no fraction-free step: an independent
    /// route to the unique RREF.
    fn naive_rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
        let mut a: Vec<Vec<Q>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols() {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone().recip();
            for j in 0..m.cols() {
                a[r][j] = &a[r][j] * &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..m.cols() {
                        let delta = &f * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (QMatrix::from_rows(a), pivots)
    }

    #[test]
    fn rref_matches_a_naive_elimination_oracle() {
        // fixed matrices engineered with free columns between pivots
        let tricky: Vec<QMatrix> = vec![
            QMatrix::from_i64(&[&[0, 0, 1, 2], &[0, 0, 2, 4], &[0, 0, 0, 3]]),
            QMatrix::from_i64(&[&[1, 2, 1, 0], &[2, 4, 0, 1], &[3, 6, 1, 1]]),
            QMatrix::from_i64(&[&[2, 4, 1], &[4, 8, 3], &[6, 12, 5]]),
            QMatrix::zeros(3, 4),
        ];
        for m in tricky {
            assert_eq!(rref(&m), naive_rref(&m), "tricky case diverged");
        }
        // randomized cross-check, including fractional entries
        let mut state = 0x5EEDu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for _ in 0..200 {
            let rows = (next() % 7 + 1) as usize;
            let cols = (next() % 7 + 1) as usize;
            let m = QMatrix::from_rows(
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| rat(next() as i64 % 5 - 2, next() as i64 % 3 + 1))
                            .collect()
                    })
                    .collect(),
            );
            assert_eq!(rref(&m), naive_rref(&m));
        }
    }
}
