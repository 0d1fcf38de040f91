//! Incremental reduced row-echelon spans: the membership/independence engine
//! behind every closure computation.

use crate::matrix::Matrix;
use crate::scalar::{C64, ExactScalar, Scalar};

/// A subspace of `S^len` maintained as a reduced row-echelon basis.
/// Insertion reduces the candidate against current rows, normalizes on the
/// leading nonzero entry, and back-substitutes, so rows stay in RREF.
#[derive(Clone, Debug)]
pub struct RowSpan<S> {
    len: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: ExactScalar> RowSpan<S> {
    pub fn new(len: usize) -> Self {
        RowSpan {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate the pivot coordinates of `v` in place.
    pub fn reduce(&self, v: &mut [S]) {
        debug_assert_eq!(v.len(), self.len);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        *vi = vi.sub(&c.mul(ri));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Insert a vector; returns true when it was independent (dim grew).
    pub fn insert(&mut self, mut v: Vec<S>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = S::one().div(&v[p]);
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // Back-substitute the new pivot out of existing rows.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (ri, vi) in row.iter_mut().zip(&v) {
                    if !vi.is_zero() {
                        *ri = ri.sub(&c.mul(vi));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn insert_matrix(&mut self, m: &Matrix<S>) -> bool {
        self.insert(m.flatten())
    }

    /// Dimension of the intersection with another span of the same ambient.
    pub fn intersection_dim(&self, other: &RowSpan<S>) -> usize {
        // dim(A) + dim(B) − dim(A+B)
        let mut joint = self.clone();
        for r in &other.rows {
            joint.insert(r.clone());
        }
        self.dim() + other.dim() - joint.dim()
    }
}

/// Float-mode span with an orthonormal basis and a relative residual test:
/// a candidate counts as new when its residual after projection exceeds
/// `tol * max(norm, scale)`.
#[derive(Clone, Debug)]
pub struct FloatSpan {
    len: usize,
    basis: Vec<Vec<C64>>,
    tol: f64,
    scale: f64,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

impl FloatSpan {
    pub fn new(len: usize, tol: f64) -> Self {
        FloatSpan {
            len,
            basis: Vec::new(),
            tol,
            scale: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn insert(&mut self, v: Vec<C64>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let n0 = norm(&v);
        self.scale = self.scale.max(n0);
        if n0 <= self.tol * self.scale.max(1e-300) {
            return false;
        }
        let mut w = v;
        // Two rounds of modified Gram-Schmidt for numerical hygiene.
        for _ in 0..2 {
            for b in &self.basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let r = norm(&w);
        if r <= self.tol * self.scale {
            return false;
        }
        let inv = 1.0 / r;
        for wi in w.iter_mut() {
            *wi *= inv;
        }
        self.basis.push(w);
        true
    }
}
