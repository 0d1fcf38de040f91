//! Field-generic linear algebra: exact rank/kernel/solve, incremental row
//! spans, commutants, multiplicative span closures, and float-mode spectral
//! routines (SVD, Hermitian and normal eigenproblems) with a tolerance policy.

mod exact;
mod float;
mod span;
mod subspace;

pub use exact::{invert, kernel, rank, rref, solve};
pub use float::{
    cluster_multiplicities, eigen_multiplicities, hermitian_eig, kernel_f, normal_eigenvalues,
    rank_f, singular_values, svd_right,
};
pub use span::{FloatSpan, RowSpan};
pub use subspace::{InnerProductForm, OrthoProjection, Subspace, orth_projection, orthonormalize};

use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// Basis of `{X : X Mᵢ = Mᵢ X for all i}` inside `End(k^n)`, computed by
/// solving the stacked linear system on matrix entries. Always contains the
/// identity. An empty constraint list yields all of `End(k^n)`.
pub fn commutant<S: ExactScalar>(ops: &[Matrix<S>], n: usize) -> Vec<Matrix<S>> {
    for m in ops {
        assert!(
            m.is_square() && m.rows() == n,
            "commutant: ops must be square of size {n}"
        );
    }
    if ops.is_empty() {
        let mut basis = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = Matrix::zeros(n, n);
                e[(i, j)] = S::one();
                basis.push(e);
            }
        }
        return basis;
    }
    // Row-major vectorization: vec(AXB) = (A ⊗ Bᵀ) vec(X), so the constraint
    // X M = M X reads (I ⊗ Mᵀ − M ⊗ I) vec(X) = 0.
    let id = Matrix::identity(n);
    let mut stacked_rows: Vec<Vec<S>> = Vec::new();
    for m in ops {
        let block = id.kron(&m.transpose()).sub(&m.kron(&id));
        for r in 0..block.rows() {
            stacked_rows.push(block.row(r).to_vec());
        }
    }
    let system = Matrix::from_rows(stacked_rows);
    kernel(&system)
        .into_iter()
        .map(|v| Matrix::from_flat(n, n, v))
        .collect()
}

/// Smallest subspace of `End(k^n)` containing `seed`, closed under left and
/// right multiplication by `products_with` and, if `star`, under adjoints.
/// Returns a basis. Terminates because dimensions are bounded by `n²`.
pub fn span_closure<S: ExactScalar>(
    seed: &[Matrix<S>],
    products_with: &[Matrix<S>],
    star: bool,
) -> Vec<Matrix<S>> {
    let n = seed
        .first()
        .or_else(|| products_with.first())
        .map(|m| m.rows())
        .unwrap_or(0);
    let mut span = RowSpan::new(n * n);
    let mut basis: Vec<Matrix<S>> = Vec::new();
    let mut queue: Vec<Matrix<S>> = Vec::new();

    let push = |m: Matrix<S>,
                    span: &mut RowSpan<S>,
                    basis: &mut Vec<Matrix<S>>,
                    queue: &mut Vec<Matrix<S>>| {
        if span.insert(m.flatten()) {
            basis.push(m.clone());
            queue.push(m);
        }
    };

    for m in seed {
        push(m.clone(), &mut span, &mut basis, &mut queue);
    }
    while let Some(x) = queue.pop() {
        if star {
            push(x.adjoint(), &mut span, &mut basis, &mut queue);
        }
        for p in products_with {
            push(p.mul(&x), &mut span, &mut basis, &mut queue);
            push(x.mul(p), &mut span, &mut basis, &mut queue);
            if star {
                let pa = p.adjoint();
                push(pa.mul(&x), &mut span, &mut basis, &mut queue);
                push(x.mul(&pa), &mut span, &mut basis, &mut queue);
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GRat;

    fn e(n: usize, i: usize, j: usize) -> Matrix<GRat> {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = GRat::ONE;
        m
    }

    #[test]
    fn commutant_of_nothing_is_everything() {
        let basis = commutant::<GRat>(&[], 3);
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn commutant_of_swap_is_two_dimensional() {
        // Hand check: X commuting with the swap satisfies x11=x22, x12=x21,
        // a 2-dimensional space spanned by I and the swap itself.
        let swap: Matrix<GRat> = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let basis = commutant(&[swap.clone()], 2);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            assert_eq!(x.mul(&swap), swap.mul(x));
        }
        // Identity is in the span.
        let mut span = RowSpan::new(4);
        for b in &basis {
            span.insert(b.flatten());
        }
        assert!(span.contains(&Matrix::<GRat>::identity(2).flatten()));
    }

    #[test]
    fn commutant_dim_is_basis_independent() {
        // Recombining the constraint set within its span leaves the
        // commutant dimension unchanged.
        let a: Matrix<GRat> = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let b: Matrix<GRat> = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let dim1 = commutant(&[a.clone(), b.clone()], 2).len();
        let a2 = a.add(&b.scale(&GRat::from_int(3)));
        let b2 = a.sub(&b);
        let dim2 = commutant(&[a2, b2], 2).len();
        assert_eq!(dim1, dim2);
    }

    #[test]
    fn span_closure_generates_full_matrix_algebra() {
        // e12 and e21 generate M2 (dim 4): words of length ≤ 3 already do it.
        let seed = vec![e(2, 0, 1)];
        let prods = vec![e(2, 0, 1), e(2, 1, 0)];
        let basis = span_closure(&seed, &prods, false);
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn span_closure_of_distinct_diag_powers_is_diagonal_algebra() {
        let d: Matrix<GRat> = Matrix::from_ints(&[&[1, 0], &[0, 2]]);
        let basis = span_closure(&[d.clone()], &[d], false);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn span_closure_idempotent() {
        let seed = vec![e(2, 0, 1)];
        let prods = vec![e(2, 0, 1), e(2, 1, 0)];
        let basis = span_closure(&seed, &prods, false);
        let again = span_closure(&basis, &prods, false);
        assert_eq!(basis.len(), again.len());
    }
}
