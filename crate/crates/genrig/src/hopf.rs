//! The function algebra on a finite group, matrix-coefficient subspaces, and
//! the kernel ideal cutting out the isotropy subgroup of a subspace: the
//! generators pair vectors of `W` against functionals vanishing on `W`, and
//! their common zero locus recovers `{g : gW ≤ W}`.

use crate::linalg::{RowSpan, Subspace, rank};
use crate::matrix::Matrix;
use crate::providers::MatrixRep;
use crate::scalar::{GRat, Scalar};

/// The pointwise algebra of functions on a finite group, stored densely as
/// value vectors indexed by group elements.
#[derive(Debug, Clone)]
pub struct FunctionAlgebra {
    order: usize,
}

/// One matrix coefficient `g ↦ f(g·v)`.
#[derive(Debug, Clone)]
pub struct CoefficientElement {
    pub functional: Vec<GRat>,
    pub vector: Vec<GRat>,
    pub values: Vec<GRat>,
}

impl FunctionAlgebra {
    pub fn of(rep: &MatrixRep) -> Self {
        FunctionAlgebra {
            order: rep.group.order(),
        }
    }

    pub fn dim(&self) -> usize {
        self.order
    }
}

/// The coefficient `c_{f,v}(g) = f(ρ(g)·v)` as a value vector.
pub fn coefficient(rep: &MatrixRep, functional: &[GRat], vector: &[GRat]) -> CoefficientElement {
    let values = rep
        .group
        .elements()
        .map(|g| {
            let gv = rep.image(g).mul_vec(vector);
            functional
                .iter()
                .zip(&gv)
                .fold(GRat::ZERO, |acc, (f, x)| acc.add(&f.mul(x)))
        })
        .collect();
    CoefficientElement {
        functional: functional.to_vec(),
        vector: vector.to_vec(),
        values,
    }
}

/// Span of all coefficients of the representation: dimension Σ dᵢ² over the
/// distinct irreducibles occurring in V.
pub fn coefficient_space(rep: &MatrixRep) -> Vec<Vec<GRat>> {
    let n = rep.dim();
    let mut span = RowSpan::new(rep.group.order());
    let mut basis = Vec::new();
    for i in 0..n {
        let mut f = vec![GRat::ZERO; n];
        f[i] = GRat::ONE;
        for j in 0..n {
            let mut v = vec![GRat::ZERO; n];
            v[j] = GRat::ONE;
            let c = coefficient(rep, &f, &v);
            if span.insert(c.values.clone()) {
                basis.push(c.values);
            }
        }
    }
    basis
}

/// Generators of the kernel ideal for `W ≤ V`: the coefficients pairing a
/// basis of `W` against a basis of the annihilator `{f : f|_W = 0}`.
pub fn kernel_ideal_generators(rep: &MatrixRep, w: &Subspace<GRat>) -> Vec<CoefficientElement> {
    let ann = w.annihilator();
    let mut gens = Vec::new();
    for f in &ann {
        for v in w.basis_cols() {
            gens.push(coefficient(rep, f, &v));
        }
    }
    gens
}

/// Common zero set of the generators, as group-element indices. With the
/// kernel-ideal generators this equals the isotropy subgroup of `W`.
pub fn zero_locus(rep: &MatrixRep, gens: &[CoefficientElement]) -> Vec<usize> {
    rep.group
        .elements()
        .filter(|&g| gens.iter().all(|c| c.values[g].is_zero()))
        .collect()
}

/// Dimension of the quotient of the function algebra by the ideal the
/// generators produce. In the pointwise algebra the ideal is spanned by the
/// products of the generators with delta functions, so its rank counts the
/// points where some generator is nonzero.
pub fn quotient_dimension(rep: &MatrixRep, gens: &[CoefficientElement]) -> usize {
    let order = FunctionAlgebra::of(rep).dim();
    if gens.is_empty() {
        return order;
    }
    let mut rows = Vec::new();
    for c in gens {
        for g in 0..order {
            if !c.values[g].is_zero() {
                let mut row = vec![GRat::ZERO; order];
                row[g] = c.values[g].clone();
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return order;
    }
    let ideal_rank = rank(&Matrix::from_rows(rows));
    order - ideal_rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropy::isotropy_subgroup;
    use crate::providers::{regular_rep, s3_permutation};

    fn line3(a: i64, b: i64, c: i64) -> Subspace<GRat> {
        Subspace::line(vec![GRat::from_int(a), GRat::from_int(b), GRat::from_int(c)])
    }

    #[test]
    fn coefficient_space_dims() {
        // Permutation rep of S3 contains trivial ⊕ standard: 1 + 4 = 5.
        let rep = s3_permutation();
        assert_eq!(coefficient_space(&rep).len(), 5);
        // The regular rep sees every irreducible: 1 + 1 + 4 = 6 = |G|.
        let reg = regular_rep(&rep.group);
        assert_eq!(coefficient_space(&reg).len(), 6);
    }

    #[test]
    fn coefficient_space_is_conjugation_invariant() {
        let rep = s3_permutation();
        let t: Matrix<GRat> = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let conj = rep.conjugate(&t).unwrap();
        assert_eq!(coefficient_space(&rep).len(), coefficient_space(&conj).len());
    }

    #[test]
    fn full_and_zero_subspaces_give_no_generators() {
        let rep = s3_permutation();
        assert!(kernel_ideal_generators(&rep, &Subspace::full(3)).is_empty());
        assert!(kernel_ideal_generators(&rep, &Subspace::zero(3)).is_empty());
        let gens = kernel_ideal_generators(&rep, &Subspace::full(3));
        assert_eq!(zero_locus(&rep, &gens).len(), 6);
        assert_eq!(quotient_dimension(&rep, &gens), 6);
    }

    #[test]
    fn locus_matches_isotropy_on_lines() {
        let rep = s3_permutation();
        for (a, b, c) in [(1, 0, 0), (1, -1, 0), (1, 1, 1), (1, 2, 3), (0, 1, -1)] {
            let w = line3(a, b, c);
            let gens = kernel_ideal_generators(&rep, &w);
            let locus = zero_locus(&rep, &gens);
            let iso = isotropy_subgroup(&rep, &w);
            assert_eq!(locus, iso.member_indices, "mismatch at ({a},{b},{c})");
            assert!(rep.group.is_subgroup(&locus));
            assert_eq!(quotient_dimension(&rep, &gens), iso.order());
        }
    }

    #[test]
    fn quotient_plus_ideal_rank_is_group_order() {
        let rep = s3_permutation();
        let w = line3(1, 0, 0);
        let gens = kernel_ideal_generators(&rep, &w);
        let locus = zero_locus(&rep, &gens);
        let q = quotient_dimension(&rep, &gens);
        assert_eq!(q, locus.len());
        // ideal rank = |G| − q by construction; the locus check makes the
        // identity non-tautological.
        assert_eq!(q + (rep.group.order() - q), rep.group.order());
    }

    #[test]
    fn coordinate_line_generators_are_the_off_coordinates() {
        // For W = C·e1, the annihilator is spanned by e2*, e3*, so the
        // generators are g ↦ (g·e1)₂ and g ↦ (g·e1)₃.
        let rep = s3_permutation();
        let w = line3(1, 0, 0);
        let gens = kernel_ideal_generators(&rep, &w);
        assert_eq!(gens.len(), 2);
        for g in rep.group.elements() {
            let ge1 = rep.image(g).col(0);
            let vals: Vec<GRat> = gens.iter().map(|c| c.values[g].clone()).collect();
            // values match coordinates 2 and 3 of g·e1 in some order
            let mut expect = vec![ge1[1].clone(), ge1[2].clone()];
            let mut got = vals.clone();
            expect.sort_by_key(|x| x.to_string());
            got.sort_by_key(|x| x.to_string());
            assert_eq!(expect, got);
        }
    }
}
