//! Dense and sparse matrices over a generic scalar.

use std::fmt;

use crate::scalar::{C64, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_c64(&self) -> Matrix<C64> {
        self.map(|x| x.to_c64())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !v[k].is_zero() {
                        acc = acc.add(&a.mul(&v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; blocks ordered so that `(a ⊗ b)` acts on
    /// `x ⊗ y` with `a` on the first tensor factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut acc = S::zero();
        for i in 0..self.rows {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)] == S::one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Stack columns of `rhs` to the right of `self`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn from_cols(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    /// Row-major flattening, used to treat matrices as vectors in span
    /// computations.
    pub fn flatten(&self) -> Vec<S> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length");
        Matrix { rows, cols, data }
    }

    pub fn commutes_with(&self, rhs: &Self) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Matrix<C64> {
    /// Max absolute entry; a cheap norm for tolerance scaling.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(
                    f,
                    "{:?}{}",
                    self.data[r * self.cols + c],
                    if c + 1 < self.cols { ", " } else { "" }
                )?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Coordinate-format sparse matrix. Used for intertwiner-block generators,
/// which are phase-weighted index orbits with very few nonzero entries.
#[derive(Clone, Debug)]
pub struct SparseMatrix<S> {
    pub rows: usize,
    pub cols: usize,
    /// (row, col, value), unordered, no duplicate positions.
    pub entries: Vec<(u32, u32, S)>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<(u32, u32, S)>) -> Self {
        SparseMatrix { rows, cols, entries }
    }

    pub fn from_dense(m: &Matrix<S>) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m[(r, c)].is_zero() {
                    entries.push((r as u32, c as u32, m[(r, c)].clone()));
                }
            }
        }
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, c, v) in &self.entries {
            m[(*r as usize, *c as usize)] = v.clone();
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// self * dense, where dense is rows=self.cols.
    pub fn mul_dense(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows(), "sparse mul shape");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols());
        for (r, c, v) in &self.entries {
            let (r, c) = (*r as usize, *c as usize);
            for j in 0..rhs.cols() {
                let b = &rhs[(c, j)];
                if !b.is_zero() {
                    out[(r, j)] = out[(r, j)].add(&v.mul(b));
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(r, c, v)| (*c, *r, v.conj()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GRat;

    #[test]
    fn mul_identity_and_kron() {
        let a: Matrix<GRat> = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let k = id.kron(&a);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 2)], GRat::from_int(1));
        assert_eq!(k[(0, 1)], GRat::from_int(2));
        assert_eq!(k[(0, 2)], GRat::from_int(0));
    }

    #[test]
    fn adjoint_conjugates() {
        let m: Matrix<GRat> = Matrix::from_rows(vec![vec![GRat::i(), GRat::from_int(1)]]);
        let a = m.adjoint();
        assert_eq!(a.rows(), 2);
        assert_eq!(a[(0, 0)], GRat::i().conj());
    }

    #[test]
    fn sparse_matches_dense() {
        let a: Matrix<GRat> = Matrix::from_ints(&[&[0, 2], &[3, 0]]);
        let b: Matrix<GRat> = Matrix::from_ints(&[&[1, 1], &[1, -1]]);
        let sp = SparseMatrix::from_dense(&a);
        assert_eq!(sp.nnz(), 2);
        assert_eq!(sp.mul_dense(&b), a.mul(&b));
        assert_eq!(sp.adjoint().to_dense(), a.adjoint());
    }
}
