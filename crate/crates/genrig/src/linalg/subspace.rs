//! Subspaces, inner-product forms, and form-orthogonal projections.

use crate::matrix::Matrix;
use crate::scalar::{C64, ExactScalar, Scalar};

use super::exact::{rank, rref};
use super::float::rank_f;

/// A linear subspace given by a basis matrix whose columns are independent.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn line(v: Vec<S>) -> Self {
        assert!(!v.iter().all(Scalar::is_zero), "zero vector spans nothing");
        Subspace {
            ambient: v.len(),
            basis: Matrix::from_cols(&[v]),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// ambient × dim matrix of basis columns.
    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_cols(&self) -> Vec<Vec<S>> {
        (0..self.dim()).map(|j| self.basis.col(j)).collect()
    }
}

impl<S: ExactScalar> Subspace<S> {
    /// Build from a basis matrix, verifying column independence.
    pub fn new(basis: Matrix<S>) -> crate::Result<Self> {
        let d = basis.cols();
        if rank(&basis) != d {
            return Err(crate::Error::Validation(format!(
                "basis columns are dependent: rank < {d}"
            )));
        }
        Ok(Subspace {
            ambient: basis.rows(),
            basis,
        })
    }

    /// Span of possibly dependent columns: extracts an independent subset.
    pub fn spanned_by(ambient: usize, vectors: &[Vec<S>]) -> Self {
        let mut span = super::span::RowSpan::new(ambient);
        let mut cols: Vec<Vec<S>> = Vec::new();
        for v in vectors {
            if span.insert(v.clone()) {
                cols.push(v.clone());
            }
        }
        Subspace {
            ambient,
            basis: if cols.is_empty() {
                Matrix::zeros(ambient, 0)
            } else {
                Matrix::from_cols(&cols)
            },
        }
    }

    pub fn contains_vector(&self, v: &[S]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(Scalar::is_zero);
        }
        let concat = self.basis.hstack(&Matrix::from_cols(&[v.to_vec()]));
        rank(&concat) == self.dim()
    }

    /// Containment and equality through ranks of concatenated bases:
    /// basis-free and uniform across modes.
    pub fn contains(&self, other: &Subspace<S>) -> bool {
        assert_eq!(self.ambient, other.ambient);
        rank(&self.basis.hstack(&other.basis)) == self.dim()
    }

    pub fn equals(&self, other: &Subspace<S>) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    /// Image under an invertible map.
    pub fn apply(&self, g: &Matrix<S>) -> Subspace<S> {
        let image = g.mul(&self.basis);
        debug_assert_eq!(rank(&image), self.dim(), "apply: map not injective on W");
        Subspace {
            ambient: g.rows(),
            basis: image,
        }
    }

    pub fn sum(&self, other: &Subspace<S>) -> Subspace<S> {
        let cols: Vec<Vec<S>> = self
            .basis_cols()
            .into_iter()
            .chain(other.basis_cols())
            .collect();
        Subspace::spanned_by(self.ambient, &cols)
    }

    pub fn intersection(&self, other: &Subspace<S>) -> Subspace<S> {
        // Solve B1 x = B2 y: kernel of [B1 | −B2].
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let neg = other.basis.neg();
        let sys = self.basis.hstack(&neg);
        let mut cols = Vec::new();
        for k in super::exact::kernel(&sys) {
            let x = &k[..self.dim()];
            let v = self.basis.mul_vec(x);
            if !v.iter().all(Scalar::is_zero) {
                cols.push(v);
            }
        }
        Subspace::spanned_by(self.ambient, &cols)
    }

    /// Annihilator `{f ∈ V* : f|_W = 0}`, as row-coordinate functionals.
    pub fn annihilator(&self) -> Vec<Vec<S>> {
        super::exact::kernel(&self.basis.transpose())
    }

    /// Canonical reduced basis (column-RREF), used for stable serialization.
    pub fn reduced_basis(&self) -> Matrix<S> {
        let (r, pivots) = rref(&self.basis.transpose());
        let rows: Vec<Vec<S>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        if rows.is_empty() {
            Matrix::zeros(self.ambient, 0)
        } else {
            Matrix::from_rows(rows).transpose()
        }
    }
}

impl Subspace<C64> {
    pub fn new_float(basis: Matrix<C64>, tol: f64) -> crate::Result<Self> {
        let d = basis.cols();
        if d > 0 && rank_f(&basis, tol) != d {
            return Err(crate::Error::Validation(format!(
                "float basis columns are dependent at tolerance {tol:e}"
            )));
        }
        Ok(Subspace {
            ambient: basis.rows(),
            basis,
        })
    }

    /// Orthonormal projection matrix onto this subspace (standard form).
    pub fn projector_f(&self) -> Matrix<C64> {
        let q = orthonormalize(&self.basis);
        q.mul(&q.adjoint())
    }

    /// Gap distance ‖P_self − P_other‖ (operator norm).
    pub fn gap_f(&self, other: &Subspace<C64>) -> f64 {
        let diff = self.projector_f().sub(&other.projector_f());
        super::float::singular_values(&diff)
            .first()
            .copied()
            .unwrap_or(0.0)
    }
}

/// Modified Gram-Schmidt orthonormalization of the columns (standard form),
/// dropping numerically dependent columns.
pub fn orthonormalize(basis: &Matrix<C64>) -> Matrix<C64> {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    for j in 0..basis.cols() {
        let mut v = basis.col(j);
        for _ in 0..2 {
            for q in &cols {
                let c: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-12 {
            for vi in v.iter_mut() {
                *vi /= n;
            }
            cols.push(v);
        }
    }
    if cols.is_empty() {
        Matrix::zeros(basis.rows(), 0)
    } else {
        Matrix::from_cols(&cols)
    }
}

/// A positive-definite sesquilinear form given by its Gram matrix, with
/// `⟨x, y⟩ = x* G y` (conjugate-linear in the first slot).
#[derive(Clone, Debug)]
pub struct InnerProductForm<S> {
    gram: Matrix<S>,
}

impl<S: ExactScalar> InnerProductForm<S> {
    pub fn standard(n: usize) -> Self {
        InnerProductForm {
            gram: Matrix::identity(n),
        }
    }

    /// Validates Hermitian symmetry and positive-definiteness (every
    /// elimination pivot of the LDL pass must be a positive real).
    pub fn new(gram: Matrix<S>) -> crate::Result<Self> {
        if !gram.is_square() {
            return Err(crate::Error::Validation("gram matrix must be square".into()));
        }
        if gram.adjoint() != gram {
            return Err(crate::Error::DegenerateForm("gram matrix is not Hermitian".into()));
        }
        if !ldl_positive_definite(&gram) {
            return Err(crate::Error::DegenerateForm(
                "gram matrix is not positive definite".into(),
            ));
        }
        Ok(InnerProductForm { gram })
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .fold(S::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
    }

    /// Whether a set of operators preserves the form: `A* G A = G`.
    pub fn is_isometry(&self, a: &Matrix<S>) -> bool {
        a.adjoint().mul(&self.gram).mul(a) == self.gram
    }
}

/// LDL-style definiteness check: all pivots real and positive. The scalar
/// type represents a subfield of C closed under conjugation, so "real
/// positive" is tested as `x == conj(x)` and positivity of the real part via
/// the complex embedding being on the positive axis; for exact rationals this
/// is an exact sign test.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the test
fn ldl_positive_definite<S: ExactScalar>(gram: &Matrix<S>) -> bool {
    let n = gram.rows();
    let mut a = gram.clone();
    for k in 0..n {
        let d = a[(k, k)].clone();
        if d != d.conj() {
            return false;
        }
        let dv = d.to_c64();
        if !(dv.re > 0.0) {
            // Exact pivots of a Hermitian PD candidate are real rationals,
            // so the float sign is decisive unless the pivot is exactly 0.
            return false;
        }
        if d.is_zero() {
            return false;
        }
        for i in (k + 1)..n {
            let f = a[(i, k)].div(&d);
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = f.mul(&a[(k, j)]);
                a[(i, j)] = a[(i, j)].sub(&t);
            }
        }
    }
    true
}

/// A projection onto `target`, orthogonal with respect to some form.
#[derive(Clone, Debug)]
pub struct OrthoProjection<S> {
    pub matrix: Matrix<S>,
    pub target: Subspace<S>,
}

/// Form-orthogonal projection onto `w`, built by Gram-Schmidt against the
/// form (unnormalized, so no square roots are needed in exact modes).
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the test
pub fn orth_projection<S: ExactScalar>(
    w: &Subspace<S>,
    form: &InnerProductForm<S>,
) -> crate::Result<OrthoProjection<S>> {
    let n = w.ambient_dim();
    assert_eq!(form.dim(), n, "form dimension mismatch");
    let mut orth: Vec<Vec<S>> = Vec::with_capacity(w.dim());
    let mut norms: Vec<S> = Vec::with_capacity(w.dim());
    for b in w.basis_cols() {
        let mut u = b;
        for (v, nv) in orth.iter().zip(&norms) {
            let c = form.inner(v, &u).div(nv);
            if c.is_zero() {
                continue;
            }
            for (ui, vi) in u.iter_mut().zip(v) {
                *ui = ui.sub(&c.mul(vi));
            }
        }
        let nn = form.inner(&u, &u);
        if nn != nn.conj() || nn.is_zero() || !(nn.to_c64().re > 0.0) {
            return Err(crate::Error::DegenerateForm(
                "form is not positive definite on the subspace".into(),
            ));
        }
        orth.push(u);
        norms.push(nn);
    }
    // P = Σ uᵢ (uᵢ* G) / ⟨uᵢ, uᵢ⟩
    let mut p: Matrix<S> = Matrix::zeros(n, n);
    for (u, nn) in orth.iter().zip(&norms) {
        let inv = S::one().div(nn);
        // row vector u* G
        let ug: Vec<S> = (0..n)
            .map(|j| {
                let mut acc = S::zero();
                for (i, ui) in u.iter().enumerate() {
                    let gij = &form.gram()[(i, j)];
                    if !gij.is_zero() && !ui.is_zero() {
                        acc = acc.add(&ui.conj().mul(gij));
                    }
                }
                acc
            })
            .collect();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let ui = u[i].mul(&inv);
            for j in 0..n {
                if !ug[j].is_zero() {
                    p[(i, j)] = p[(i, j)].add(&ui.mul(&ug[j]));
                }
            }
        }
    }
    Ok(OrthoProjection {
        matrix: p,
        target: w.clone(),
    })
}
