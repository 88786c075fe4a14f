//! Dense matrices over a generic scalar ring, plus integer Hermite normal form.

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + a.clone() * self[(i, j)].clone();
            }
        }
        out
    }

    /// Fraction-free Bareiss determinant; every division is exact.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(piv) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, piv);
            let inv = T::one() / a[(r, c)].clone();
            for i in r + 1..a.rows {
                let f = a[(i, c)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
            r += 1;
        }
        r
    }

    /// Solves `x * self = b` for a square invertible matrix.
    pub fn solve_left(&self, b: &[T]) -> Option<Vec<T>> {
        let n = self.rows;
        assert_eq!(self.cols, n);
        // x A = b  <=>  A^T x^T = b^T
        let mut a = self.transpose();
        let mut rhs = b.to_vec();
        for c in 0..n {
            let piv = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(c, piv);
            rhs.swap(c, piv);
            let inv = T::one() / a[(c, c)].clone();
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
                    a[(i, j)] = v;
                }
                rhs[i] = rhs[i].clone() - f * rhs[c].clone();
            }
        }
        Some((0..n).map(|i| rhs[i].clone() / a[(i, i)].clone()).collect())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

/// Echelon basis of the row lattice spanned by the rows of `m`: upper
/// triangular staircase, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_generators(m: &Matrix<BigInt>) -> Matrix<BigInt> {
    let cols = m.ncols();
    let mut rows: Vec<Vec<BigInt>> = m.to_rows();
    let mut r = 0;
    for c in 0..cols {
        loop {
            // pick the smallest nonzero |entry| at or below r as pivot
            let piv = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(piv) = piv else {
                break;
            };
            rows.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(head[r].iter()).skip(c) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(tail[0].iter()).skip(c) {
                *x -= &q * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|v| v.iter().any(|x| !x.is_zero()));
    Matrix::from_rows_with_cols(rows, cols)
}

impl<T: Scalar> Matrix<T> {
    fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }
}

/// Row-style Hermite normal form of a matrix of full row rank.
pub fn hnf(m: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    let h = hnf_generators(m);
    if h.nrows() < m.nrows() {
        return Err(Error::RankDeficient);
    }
    Ok(h)
}

/// Lower-triangular variant used for order bases: the pivot of row `i` sits
/// in column `i`, entries to its right are zero and entries below each pivot
/// are reduced modulo it. Requires the rows to span a full-rank lattice.
pub fn lower_hnf(m: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    let n = m.ncols();
    let rev = Matrix::from_rows(
        m.to_rows()
            .into_iter()
            .map(|r| r.into_iter().rev().collect())
            .collect(),
    );
    let h = hnf_generators(&rev);
    if h.nrows() != n {
        return Err(Error::RankDeficient);
    }
    let rows: Vec<Vec<BigInt>> = h
        .to_rows()
        .into_iter()
        .rev()
        .map(|r| r.into_iter().rev().collect())
        .collect();
    Ok(Matrix::from_rows(rows))
}

/// Gcd of all entries.
pub fn content(m: &Matrix<BigInt>) -> BigInt {
    m.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Whether the integer row vector `v` lies in the row lattice of a lower HNF basis.
pub fn in_lower_lattice(basis: &Matrix<BigInt>, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = basis.ncols();
    let mut rest = v.to_vec();
    let mut coords = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let (q, r) = rest[i].div_rem(&basis[(i, i)]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..=i {
            rest[j] -= &q * &basis[(i, j)];
        }
        coords[i] = q;
    }
    Some(coords)
}

/// Matrix with entry-wise `BigInt` conversion from small integers, for tests and literals.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

impl Matrix<BigInt> {
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }
}
