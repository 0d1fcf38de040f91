//! Ground-truth isotropy computations for finite groups: the subgroup fixing
//! a subspace, its restricted action, triviality and dimension-constraint
//! verdicts, and the closed-form `ax+b` demonstration family.

use crate::linalg::{Subspace, rank, solve};
use crate::matrix::Matrix;
use crate::providers::MatrixRep;
use crate::scalar::{GRat, Scalar};
use crate::wedderburn::{self, BlockProfile};

/// Which space the isotropy action is restricted to for a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RestrictionTarget {
    W,
    V,
}

/// The subgroup `{g : gW ≤ W}` with its action on `W` in the basis of `W`.
#[derive(Debug, Clone)]
pub struct IsotropySubgroup {
    pub member_indices: Vec<usize>,
    pub restriction: Vec<Matrix<GRat>>,
    pub dim_w: usize,
}

impl IsotropySubgroup {
    pub fn order(&self) -> usize {
        self.member_indices.len()
    }
}

/// Matrix of `g|_W` in the given basis, or None when `gW ⊄ W`.
/// Membership is decided by the rank of the concatenated bases.
pub fn restriction_matrix(basis: &Matrix<GRat>, g: &Matrix<GRat>) -> Option<Matrix<GRat>> {
    let d = basis.cols();
    let gb = g.mul(basis);
    if d == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    if rank(&basis.hstack(&gb)) != d {
        return None;
    }
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        cols.push(solve(basis, &gb.col(j))?);
    }
    Some(Matrix::from_cols(&cols))
}

/// Exact member list by enumeration over all group elements. For a finite
/// group `gW ≤ W` forces `gW = W`, so the result is automatically a subgroup.
pub fn isotropy_subgroup(rep: &MatrixRep, w: &Subspace<GRat>) -> IsotropySubgroup {
    assert_eq!(rep.dim(), w.ambient_dim());
    let mut member_indices = Vec::new();
    let mut restriction = Vec::new();
    for g in rep.group.elements() {
        if let Some(r) = restriction_matrix(w.basis(), rep.image(g)) {
            member_indices.push(g);
            restriction.push(r);
        }
    }
    IsotropySubgroup {
        member_indices,
        restriction,
        dim_w: w.dim(),
    }
}

fn target_action(rep: &MatrixRep, iso: &IsotropySubgroup, on: RestrictionTarget) -> Vec<Matrix<GRat>> {
    match on {
        RestrictionTarget::W => iso.restriction.clone(),
        RestrictionTarget::V => iso
            .member_indices
            .iter()
            .map(|&g| rep.image(g).clone())
            .collect(),
    }
}

/// True iff every member of `G_W` restricts to the identity on the target.
pub fn is_trivial_restriction(rep: &MatrixRep, w: &Subspace<GRat>, on: RestrictionTarget) -> bool {
    let iso = isotropy_subgroup(rep, w);
    target_action(rep, &iso, on).iter().all(Matrix::is_identity)
}

/// Wedderburn block profile of an action that is unitary with respect to
/// the form whose Gram matrix on the coordinate basis is `gram` (None for
/// the standard form). Delegates to the shared machinery; float enters only
/// in the central splitting step.
pub fn block_profile(
    action: &[Matrix<GRat>],
    gram: Option<&Matrix<GRat>>,
    seed: u64,
) -> crate::Result<BlockProfile> {
    wedderburn::block_profile(action, gram, seed)
}

/// Gram matrix of the ambient form restricted to the basis of `w`:
/// the correct inner product for coordinates of restricted actions.
pub fn restricted_gram(
    w: &Subspace<GRat>,
    form: &crate::linalg::InnerProductForm<GRat>,
) -> Matrix<GRat> {
    let cols = w.basis_cols();
    Matrix::from_fn(w.dim(), w.dim(), |i, j| form.inner(&cols[i], &cols[j]))
}

/// Dimension-constraint verdict: for ell = 0 the averaged fixed space must
/// fill the target; for ell ≥ 1 every irreducible block must have dimension
/// ≤ ell (trivial blocks are 1-dimensional, so no trivial/non-trivial split
/// is needed there), decided exactly through the standard identity.
pub fn ell_constrained(
    rep: &MatrixRep,
    w: &Subspace<GRat>,
    ell: usize,
    on: RestrictionTarget,
) -> bool {
    let iso = isotropy_subgroup(rep, w);
    ell_constrained_of(rep, &iso, ell, on)
}

/// Same verdict from a precomputed isotropy subgroup.
pub fn ell_constrained_of(
    rep: &MatrixRep,
    iso: &IsotropySubgroup,
    ell: usize,
    on: RestrictionTarget,
) -> bool {
    let action = target_action(rep, iso, on);
    let n = match on {
        RestrictionTarget::W => iso.dim_w,
        RestrictionTarget::V => rep.dim(),
    };
    if n == 0 {
        return true;
    }
    if ell == 0 {
        return wedderburn::fixed_space_dim(&action) == n;
    }
    // The image set is a group, so its span is already the full unital image
    // algebra; no coordinate star is taken (the basis of W need not be
    // orthonormal, so the coordinate adjoint is not the representation's).
    let basis = wedderburn::span_of(&action, n);
    wedderburn::max_block_at_most(&basis, n, ell)
}

/// Joint isotropy of several subspaces: elements preserving every `Wᵢ`.
pub fn joint_isotropy(rep: &MatrixRep, ws: &[Subspace<GRat>]) -> Vec<usize> {
    rep.group
        .elements()
        .filter(|&g| {
            ws.iter()
                .all(|w| restriction_matrix(w.basis(), rep.image(g)).is_some())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The ax+b family: closed-form isotropy of lines in C².
// ---------------------------------------------------------------------------

/// Closed-form description of the stabilizer of a line under the
/// upper-triangular `(1 b; 0 a)` action (`a > 0` real, `b` real).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum AxbStabilizer {
    /// The whole group (only for the line through the first basis vector).
    FullGroup,
    /// The scaling factor `{(a, 0)}` (the line through the second vector).
    SecondFactor,
    /// The conjugate one-parameter family `{(a, b) : b = (a−1)·ratio}`
    /// stabilizing a generic line `[x : y]` with ratio `x/y`.
    Conjugated { ratio: String },
}

/// Stabilizer and triviality verdict for a line `[x : y]` in the projective
/// space of C². The only line whose stabilizer acts trivially is `[1 : 0]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AxbVerdict {
    pub stabilizer: AxbStabilizer,
    pub good: bool,
}

/// The `(1 b; 0 a)` group acting on C²: a point `(x, y)` maps to
/// `(x + b y, a y)`. A line `[x : y]` is stabilized by `(a, b)` iff
/// `(x + b y, a y) ∥ (x, y)`; the scale factor on the line decides
/// triviality.
pub fn axb_isotropy(x: &GRat, y: &GRat) -> crate::Result<AxbVerdict> {
    if x.is_zero() && y.is_zero() {
        return Err(crate::Error::Validation("[0:0] is not a projective point".into()));
    }
    if y.is_zero() {
        // (x, 0) ↦ (x, 0): every element stabilizes and acts by factor 1.
        return Ok(AxbVerdict {
            stabilizer: AxbStabilizer::FullGroup,
            good: true,
        });
    }
    if x.is_zero() {
        // (0, y) ↦ (by, ay): stabilized iff b = 0; the factor is a.
        return Ok(AxbVerdict {
            stabilizer: AxbStabilizer::SecondFactor,
            good: false,
        });
    }
    // y ≠ 0: normalize to (r, 1) with r = x/y. (r + b, a) ∥ (r, 1) iff
    // r + b = a r, i.e. b = (a − 1) r; the factor on the line is a ≠ 1
    // for every non-identity stabilizer element.
    let ratio = x.div(y);
    Ok(AxbVerdict {
        stabilizer: AxbStabilizer::Conjugated {
            ratio: ratio.to_string(),
        },
        good: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::providers::s3_permutation;

    fn line3(a: i64, b: i64, c: i64) -> Subspace<GRat> {
        Subspace::line(vec![GRat::from_int(a), GRat::from_int(b), GRat::from_int(c)])
    }

    #[test]
    fn full_space_has_whole_group() {
        let rep = s3_permutation();
        let iso = isotropy_subgroup(&rep, &Subspace::full(3));
        assert_eq!(iso.order(), 6);
    }

    #[test]
    fn coordinate_line_in_s3() {
        // Permutations fixing the line through e1 are exactly {e, (23)}.
        let rep = s3_permutation();
        let iso = isotropy_subgroup(&rep, &line3(1, 0, 0));
        assert_eq!(iso.order(), 2);
        assert!(rep.group.is_subgroup(&iso.member_indices));
        assert!(is_trivial_restriction(&rep, &line3(1, 0, 0), RestrictionTarget::W));
        // On V the non-identity member acts non-trivially.
        assert!(!is_trivial_restriction(&rep, &line3(1, 0, 0), RestrictionTarget::V));
    }

    #[test]
    fn sign_line_in_s3() {
        // (12) maps e1−e2 to its negative: isotropy of order 2, acting by −1.
        let rep = s3_permutation();
        let w = line3(1, -1, 0);
        let iso = isotropy_subgroup(&rep, &w);
        assert_eq!(iso.order(), 2);
        assert!(!is_trivial_restriction(&rep, &w, RestrictionTarget::W));
        // ℓ = 0 fails, ℓ = 1 holds (one-dimensional nontrivial block).
        assert!(!ell_constrained(&rep, &w, 0, RestrictionTarget::W));
        assert!(ell_constrained(&rep, &w, 1, RestrictionTarget::W));
        let gram = restricted_gram(&w, &crate::linalg::InnerProductForm::standard(3));
        let profile = block_profile(&iso.restriction, Some(&gram), 3).unwrap();
        assert_eq!(profile.blocks, vec![(1, 1)]);
        assert_eq!(profile.fixed_dim, 0);
    }

    #[test]
    fn standard_summand_ell_thresholds() {
        // W = {x : Σx = 0} carries the full 2-dim irreducible of S3
        // (G_W = S3), so ℓ = 1 fails and ℓ = 2 holds.
        let rep = s3_permutation();
        let w = Subspace::new(Matrix::from_ints(&[&[1, 1], &[-1, 0], &[0, -1]])).unwrap();
        let iso = isotropy_subgroup(&rep, &w);
        assert_eq!(iso.order(), 6);
        assert!(!ell_constrained(&rep, &w, 1, RestrictionTarget::W));
        assert!(ell_constrained(&rep, &w, 2, RestrictionTarget::W));
        let gram = restricted_gram(&w, &crate::linalg::InnerProductForm::standard(3));
        let profile = block_profile(&iso.restriction, Some(&gram), 5).unwrap();
        assert_eq!(profile.blocks, vec![(2, 1)]);
    }

    #[test]
    fn trivial_equivalence_of_ell_zero() {
        // Definitional consistency on a small sweep of lines.
        let rep = s3_permutation();
        for (a, b, c) in [(1, 0, 0), (1, -1, 0), (1, 1, 1), (1, 2, 3), (0, 1, -1)] {
            let w = line3(a, b, c);
            assert_eq!(
                is_trivial_restriction(&rep, &w, RestrictionTarget::W),
                ell_constrained(&rep, &w, 0, RestrictionTarget::W),
            );
        }
    }

    #[test]
    fn conjugation_equivariance() {
        let rep = s3_permutation();
        let w = line3(1, -1, 0);
        let base = isotropy_subgroup(&rep, &w);
        for h in rep.group.elements() {
            let hw = w.apply(rep.image(h));
            let conj = isotropy_subgroup(&rep, &hw);
            let expected: std::collections::HashSet<usize> = base
                .member_indices
                .iter()
                .map(|&g| rep.group.mul(rep.group.mul(h, g), rep.group.inv(h)))
                .collect();
            let got: std::collections::HashSet<usize> = conj.member_indices.iter().copied().collect();
            assert_eq!(expected, got);
            // Verdicts transport along conjugation.
            for ell in 0..=2 {
                assert_eq!(
                    ell_constrained(&rep, &w, ell, RestrictionTarget::W),
                    ell_constrained(&rep, &hw, ell, RestrictionTarget::W),
                );
            }
        }
    }

    #[test]
    fn joint_isotropy_of_two_coordinate_lines() {
        // Elements fixing both C·e1 and C·e2: only the identity (the
        // transposition (12) swaps the lines; (23), (13) move one of them).
        let rep = s3_permutation();
        let members = joint_isotropy(&rep, &[line3(1, 0, 0), line3(0, 1, 0)]);
        assert_eq!(members, vec![rep.group.id()]);
    }

    #[test]
    fn axb_verdicts() {
        let one = GRat::ONE;
        let zero = GRat::ZERO;
        let v = axb_isotropy(&one, &zero).unwrap();
        assert!(v.good);
        assert_eq!(v.stabilizer, AxbStabilizer::FullGroup);
        let v = axb_isotropy(&zero, &one).unwrap();
        assert!(!v.good);
        assert_eq!(v.stabilizer, AxbStabilizer::SecondFactor);
        let v = axb_isotropy(&one, &one).unwrap();
        assert!(!v.good);
        assert!(matches!(v.stabilizer, AxbStabilizer::Conjugated { .. }));
        assert!(axb_isotropy(&zero, &zero).is_err());
    }
}
