//! Exact-mode elimination: RREF, rank, kernel, solving, inversion.

use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// Reduced row-echelon form together with pivot column indices.
pub fn rref<S: ExactScalar>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Choose the nonzero pivot with the smallest complexity to slow
        // entry growth.
        let pivot_row = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by_key(|&i| a[(i, c)].complexity());
        let Some(p) = pivot_row else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(p, j)].clone();
                a[(p, j)] = tmp;
            }
        }
        let inv = S::one().div(&a[(r, c)]);
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].mul(&inv);
            }
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..cols {
                    if !a[(r, j)].is_zero() {
                        a[(i, j)] = a[(i, j)].sub(&f.mul(&a[(r, j)]));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<S: ExactScalar>(m: &Matrix<S>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : Mx = 0}` as column vectors; `dim = cols − rank`.
pub fn kernel<S: ExactScalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![S::zero(); cols];
        x[free] = S::one();
        for (row, &p) in pivots.iter().enumerate() {
            // x_p = −R[row, free]
            x[p] = r[(row, free)].neg();
        }
        basis.push(x);
    }
    basis
}

/// One solution of `Ax = b`, or None when inconsistent.
pub fn solve<S: ExactScalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    assert_eq!(a.rows(), b.len());
    let aug = a.hstack(&Matrix::from_cols(&[b.to_vec()]));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![S::zero(); a.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, a.cols())].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or None when singular.
pub fn invert<S: ExactScalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(n));
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GRat, Rat};

    #[test]
    fn rank_examples() {
        // Zero matrix has rank 0, identity has full rank.
        let z: Matrix<GRat> = Matrix::zeros(3, 3);
        assert_eq!(rank(&z), 0);
        let id: Matrix<GRat> = Matrix::identity(4);
        assert_eq!(rank(&id), 4);
        // Hand row-reduction: second row is twice the first.
        let m: Matrix<Rat> = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        let id: Matrix<Rat> = Matrix::identity(3);
        assert!(kernel(&id).is_empty());
        // Solved by hand: x + y = 0 has kernel spanned by (1, −1) up to scale.
        let m: Matrix<Rat> = Matrix::from_ints(&[&[1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(-&v[0], v[1]);
        let z: Matrix<Rat> = Matrix::zeros(2, 3);
        assert_eq!(kernel(&z).len(), 3);
    }

    #[test]
    fn rank_plus_nullity() {
        let m: Matrix<Rat> = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m) + kernel(&m).len(), m.cols());
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn solve_and_invert() {
        let a: Matrix<Rat> = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let x = solve(&a, &[Rat::from(3), Rat::from(2)]).unwrap();
        assert_eq!(x, vec![Rat::from(1), Rat::from(1)]);
        let inv = invert(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        let sing: Matrix<Rat> = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(invert(&sing).is_none());
        assert!(solve(&sing, &[Rat::from(0), Rat::from(1)]).is_none());
    }

    #[test]
    fn kernel_vectors_are_in_the_kernel() {
        let m: Matrix<GRat> = Matrix::from_ints(&[&[1, 2, 3, 4], &[0, 1, -1, 2]]);
        for v in kernel(&m) {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}
