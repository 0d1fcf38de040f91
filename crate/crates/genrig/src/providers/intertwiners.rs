//! Tensor-power actions and intertwiner spaces behind the provider trait.
//!
//! Finite-group intertwiner blocks `Hom_G(V^{⊗a}, V^{⊗b})` are the image of
//! the group-averaging projector. For monomial representations (all images a
//! permutation with unit phases, which covers every builtin provider) the
//! averages of elementary matrices are phase-weighted index orbits: sparse,
//! disjointly supported, and computable without any elimination. The generic
//! route averages densely; the sl2 route solves the commutant equations of
//! the Leibniz action.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::linalg::{InnerProductForm, RowSpan, commutant};
use crate::matrix::{Matrix, SparseMatrix};
use crate::providers::{MatrixRep, unitarize};
use crate::scalar::{GRat, Scalar};

use super::sl2::{Sl2Rep, sl2_sym_power};

/// Default cap on the dimension of a single tensor word, overridable through
/// the `GENRIG_SIZE_BUDGET` environment variable.
pub fn default_word_budget() -> usize {
    std::env::var("GENRIG_SIZE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(4096)
}

/// Uniform access to a representation's tensor-power data.
pub trait IntertwinerProvider: Send + Sync {
    fn name(&self) -> String;
    fn dim_v(&self) -> usize;
    fn invariant_form(&self) -> &InnerProductForm<GRat>;
    fn word_budget(&self) -> usize;

    /// Generating operators on `V^{⊗m}`: images of a group generating set,
    /// or Leibniz-extended Lie-algebra generators.
    fn tensor_power_action(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>>;

    /// Basis of the intertwiner block `Hom(V^{⊗a} → V^{⊗b})`.
    fn hom_block(&self, a: usize, b: usize) -> crate::Result<Arc<Vec<SparseMatrix<GRat>>>>;

    /// Basis of the endomorphism intertwiners of `V^{⊗m}`, as the commutant
    /// of the tensor-power action.
    fn intertwiners(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>> {
        Ok(self.hom_block(m, m)?.iter().map(SparseMatrix::to_dense).collect())
    }

    fn check_budget(&self, m: usize) -> crate::Result<()> {
        let dim = self.dim_v().checked_pow(m as u32).unwrap_or(usize::MAX);
        if dim > self.word_budget() {
            return Err(crate::Error::Budget(format!(
                "word V^{{⊗{m}}} has dimension {dim} > budget {}",
                self.word_budget()
            )));
        }
        Ok(())
    }
}

/// Monomial form of one group element: `ρ(g) e_c = phase[c] · e_{perm[c]}`.
#[derive(Debug, Clone)]
struct MonomialElem {
    perm: Vec<usize>,
    phase: Vec<GRat>,
}

fn monomial_form(m: &Matrix<GRat>) -> Option<MonomialElem> {
    let n = m.rows();
    let mut perm = vec![usize::MAX; n];
    let mut phase = vec![GRat::ZERO; n];
    let mut row_used = vec![false; n];
    for c in 0..n {
        let mut nonzero = None;
        for r in 0..n {
            if !m[(r, c)].is_zero() {
                if nonzero.is_some() {
                    return None;
                }
                nonzero = Some(r);
            }
        }
        let r = nonzero?;
        if row_used[r] {
            return None;
        }
        row_used[r] = true;
        perm[c] = r;
        phase[c] = m[(r, c)].clone();
    }
    Some(MonomialElem { perm, phase })
}

/// Extend a monomial element to the m-fold tensor power. Word indices are
/// big-endian in the factors, matching `Matrix::kron`.
fn tensor_monomial(elem: &MonomialElem, m: usize) -> MonomialElem {
    let d = elem.perm.len();
    let size = d.pow(m as u32);
    let mut perm = vec![0usize; size];
    let mut phase = vec![GRat::ONE; size];
    for idx in 0..size {
        let mut rest = idx;
        let mut digits = vec![0usize; m];
        for j in (0..m).rev() {
            digits[j] = rest % d;
            rest /= d;
        }
        let mut target = 0usize;
        let mut ph = GRat::ONE;
        for &dig in &digits {
            target = target * d + elem.perm[dig];
            ph = ph.mul(&elem.phase[dig]);
        }
        perm[idx] = target;
        phase[idx] = ph;
    }
    MonomialElem { perm, phase }
}

type BlockCache = Mutex<HashMap<(usize, usize), Arc<Vec<SparseMatrix<GRat>>>>>;

/// Finite-group provider with cached intertwiner blocks.
pub struct FiniteGroupProvider {
    rep: MatrixRep,
    form: InnerProductForm<GRat>,
    monomial: Option<Vec<MonomialElem>>,
    budget: usize,
    label: String,
    cache: BlockCache,
}

impl FiniteGroupProvider {
    pub fn new(rep: MatrixRep, label: impl Into<String>) -> Self {
        Self::with_budget(rep, label, default_word_budget())
    }

    pub fn with_budget(rep: MatrixRep, label: impl Into<String>, budget: usize) -> Self {
        let monomial: Option<Vec<MonomialElem>> =
            rep.images().iter().map(monomial_form).collect();
        let form = unitarize(&rep);
        FiniteGroupProvider {
            rep,
            form,
            monomial,
            budget,
            label: label.into(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial.is_some()
    }

    fn hom_block_monomial(&self, a: usize, b: usize) -> Vec<SparseMatrix<GRat>> {
        let mono = self.monomial.as_ref().expect("monomial data");
        let d = self.rep.dim();
        let (rows, cols) = (d.pow(b as u32), d.pow(a as u32));
        let order = self.rep.group.order();
        let lifted: Vec<(MonomialElem, MonomialElem)> = (0..order)
            .map(|g| (tensor_monomial(&mono[g], b), tensor_monomial(&mono[g], a)))
            .collect();
        let mut visited = vec![false; rows * cols];
        let mut basis = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if visited[i * cols + j] {
                    continue;
                }
                // Average ρ_b(g) E_ij ρ_a(g)^{-1} over the group: each term
                // lands on (g·i, g·j) with weight φ_b(g,i)/φ_a(g,j).
                let mut acc: HashMap<(u32, u32), GRat> = HashMap::new();
                for (tb, ta) in &lifted {
                    let ti = tb.perm[i];
                    let tj = ta.perm[j];
                    visited[ti * cols + tj] = true;
                    let w = tb.phase[i].div(&ta.phase[j]);
                    let e = acc.entry((ti as u32, tj as u32)).or_insert(GRat::ZERO);
                    *e = e.add(&w);
                }
                let entries: Vec<(u32, u32, GRat)> = {
                    let mut v: Vec<_> = acc
                        .into_iter()
                        .filter(|(_, w)| !w.is_zero())
                        .map(|((r, c), w)| (r, c, w))
                        .collect();
                    v.sort_by_key(|&(r, c, _)| (r, c));
                    v
                };
                if !entries.is_empty() {
                    basis.push(SparseMatrix::from_entries(rows, cols, entries));
                }
            }
        }
        basis
    }
}

impl IntertwinerProvider for FiniteGroupProvider {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn dim_v(&self) -> usize {
        self.rep.dim()
    }

    fn invariant_form(&self) -> &InnerProductForm<GRat> {
        &self.form
    }

    fn word_budget(&self) -> usize {
        self.budget
    }

    fn tensor_power_action(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>> {
        self.check_budget(m)?;
        Ok(self
            .rep
            .generator_images()
            .into_iter()
            .map(|g| {
                let mut acc: Matrix<GRat> = Matrix::identity(1);
                for _ in 0..m {
                    acc = acc.kron(&g);
                }
                acc
            })
            .collect())
    }

    fn hom_block(&self, a: usize, b: usize) -> crate::Result<Arc<Vec<SparseMatrix<GRat>>>> {
        self.check_budget(a)?;
        self.check_budget(b)?;
        if let Some(hit) = self.cache.lock().unwrap().get(&(a, b)) {
            return Ok(hit.clone());
        }
        let basis = if self.monomial.is_some() {
            self.hom_block_monomial(a, b)
        } else {
            hom_block_generic(&self.rep, a, b)
                .into_iter()
                .map(|m| SparseMatrix::from_dense(&m))
                .collect()
        };
        let arc = Arc::new(basis);
        self.cache.lock().unwrap().insert((a, b), arc.clone());
        Ok(arc)
    }

    fn intertwiners(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>> {
        // Fast route when available; equals the commutant of the action
        // (both compute the image of the group-averaging projector).
        if self.monomial.is_some() {
            return Ok(self.hom_block(m, m)?.iter().map(SparseMatrix::to_dense).collect());
        }
        let action = self.tensor_power_action(m)?;
        let n = self.dim_v().pow(m as u32);
        Ok(commutant(&action, n))
    }
}

/// Dense averaging route for `Hom_G(V^{⊗a}, V^{⊗b})`: average each
/// elementary matrix over the full element list and keep a spanning subset.
pub fn hom_block_generic(rep: &MatrixRep, a: usize, b: usize) -> Vec<Matrix<GRat>> {
    let d = rep.dim();
    let (rows, cols) = (d.pow(b as u32), d.pow(a as u32));
    let ga: Vec<Matrix<GRat>> = rep
        .group
        .elements()
        .map(|g| {
            let mut acc: Matrix<GRat> = Matrix::identity(1);
            for _ in 0..a {
                acc = acc.kron(rep.image(g));
            }
            acc
        })
        .collect();
    let gb: Vec<Matrix<GRat>> = rep
        .group
        .elements()
        .map(|g| {
            let mut acc: Matrix<GRat> = Matrix::identity(1);
            for _ in 0..b {
                acc = acc.kron(rep.image(g));
            }
            acc
        })
        .collect();
    let mut span = RowSpan::new(rows * cols);
    let mut basis = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let mut avg: Matrix<GRat> = Matrix::zeros(rows, cols);
            for g in rep.group.elements() {
                let gi = g;
                let ginv = rep.group.inv(g);
                // ρ_b(g) E_ij ρ_a(g⁻¹) contributes col i of ρ_b(g) ⊗ row j of ρ_a(g⁻¹).
                for r in 0..rows {
                    let l = &gb[gi][(r, i)];
                    if l.is_zero() {
                        continue;
                    }
                    for c in 0..cols {
                        let rr = &ga[ginv][(j, c)];
                        if !rr.is_zero() {
                            avg[(r, c)] = avg[(r, c)].add(&l.mul(rr));
                        }
                    }
                }
            }
            if !avg.is_zero() && span.insert(avg.flatten()) {
                basis.push(avg);
            }
        }
    }
    basis
}

/// sl2 provider: the base object is a symmetric power, tensor actions are
/// Leibniz sums, and intertwiners come from commutant equations (equal to
/// the compact-group commutant since the group is connected).
pub struct Sl2Provider {
    rep: Sl2Rep,
    form: InnerProductForm<GRat>,
    budget: usize,
    cache: BlockCache,
}

impl Sl2Provider {
    pub fn new(n: usize) -> Self {
        let (rep, form) = sl2_sym_power(n);
        Sl2Provider {
            rep,
            form,
            budget: default_word_budget(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rep(&self) -> &Sl2Rep {
        &self.rep
    }

    fn leibniz(&self, x: &Matrix<GRat>, m: usize) -> Matrix<GRat> {
        let d = self.rep.dim();
        let size = d.pow(m as u32);
        let mut acc: Matrix<GRat> = Matrix::zeros(size, size);
        for k in 0..m {
            let mut term: Matrix<GRat> = Matrix::identity(1);
            for j in 0..m {
                let factor = if j == k { x.clone() } else { Matrix::identity(d) };
                term = term.kron(&factor);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl IntertwinerProvider for Sl2Provider {
    fn name(&self) -> String {
        format!("sl2:{}", self.rep.n)
    }

    fn dim_v(&self) -> usize {
        self.rep.dim()
    }

    fn invariant_form(&self) -> &InnerProductForm<GRat> {
        &self.form
    }

    fn word_budget(&self) -> usize {
        self.budget
    }

    fn tensor_power_action(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>> {
        self.check_budget(m)?;
        Ok(vec![
            self.leibniz(&self.rep.e, m),
            self.leibniz(&self.rep.f, m),
            self.leibniz(&self.rep.h, m),
        ])
    }

    fn hom_block(&self, a: usize, b: usize) -> crate::Result<Arc<Vec<SparseMatrix<GRat>>>> {
        self.check_budget(a)?;
        self.check_budget(b)?;
        if let Some(hit) = self.cache.lock().unwrap().get(&(a, b)) {
            return Ok(hit.clone());
        }
        // Solve X π_a(ξ) = π_b(ξ) X for ξ ∈ {E, F, H}.
        let act_a = self.tensor_power_action(a)?;
        let act_b = self.tensor_power_action(b)?;
        let (ra, rb) = (self.dim_v().pow(a as u32), self.dim_v().pow(b as u32));
        let ia: Matrix<GRat> = Matrix::identity(ra);
        let ib: Matrix<GRat> = Matrix::identity(rb);
        let mut rows_acc: Vec<Vec<GRat>> = Vec::new();
        for (xa, xb) in act_a.iter().zip(&act_b) {
            let block = ib.kron(&xa.transpose()).sub(&xb.kron(&ia));
            for r in 0..block.rows() {
                rows_acc.push(block.row(r).to_vec());
            }
        }
        let system = Matrix::from_rows(rows_acc);
        let basis: Vec<SparseMatrix<GRat>> = crate::linalg::kernel(&system)
            .into_iter()
            .map(|v| SparseMatrix::from_dense(&Matrix::from_flat(rb, ra, v)))
            .collect();
        let arc = Arc::new(basis);
        self.cache.lock().unwrap().insert((a, b), arc.clone());
        Ok(arc)
    }

    fn intertwiners(&self, m: usize) -> crate::Result<Vec<Matrix<GRat>>> {
        let action = self.tensor_power_action(m)?;
        let n = self.dim_v().pow(m as u32);
        Ok(commutant(&action, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::providers::{s3_permutation, s3_regular};

    #[test]
    fn monomial_detected_for_builtin_reps() {
        for rep in [s3_permutation(), crate::providers::d4_twisted(), crate::providers::q8_mixed()] {
            assert!(FiniteGroupProvider::new(rep, "t").is_monomial());
        }
    }

    #[test]
    fn monomial_blocks_match_generic_and_commutant() {
        let rep = s3_permutation();
        let provider = FiniteGroupProvider::new(rep.clone(), "s3");
        for (a, b) in [(1, 1), (1, 2), (2, 2), (0, 2), (2, 0)] {
            let fast = provider.hom_block(a, b).unwrap();
            let generic = hom_block_generic(&rep, a, b);
            assert_eq!(fast.len(), generic.len(), "dim mismatch at ({a},{b})");
            // Same span.
            let len = rep.dim().pow(b as u32) * rep.dim().pow(a as u32);
            let mut span = RowSpan::new(len);
            for m in generic.iter() {
                span.insert(m.flatten());
            }
            for m in fast.iter() {
                assert!(span.contains(&m.to_dense().flatten()));
            }
        }
        // End blocks agree with the commutant of the action.
        let comm = commutant(&provider.tensor_power_action(2).unwrap(), 9);
        assert_eq!(comm.len(), provider.hom_block(2, 2).unwrap().len());
    }

    #[test]
    fn intertwiner_blocks_are_intertwiners() {
        let provider = FiniteGroupProvider::new(s3_regular(), "s3reg");
        let action1 = provider.tensor_power_action(1).unwrap();
        let action2 = provider.tensor_power_action(2).unwrap();
        // Hom(V, V⊗V): X ρ_1(g) = ρ_2(g) X on generators.
        for x in provider.hom_block(1, 2).unwrap().iter() {
            let xd = x.to_dense();
            for (g1, g2) in action1.iter().zip(&action2) {
                assert_eq!(xd.mul(g1), g2.mul(&xd));
            }
        }
    }

    #[test]
    fn schur_for_irreducible_component() {
        // m=1 on the S3 permutation rep: End_G = span{id, all-ones}, dim 2
        // (trivial ⊕ standard). The regular rep gives Σ dᵢ² = 1+1+4 = 6.
        let p3 = FiniteGroupProvider::new(s3_permutation(), "s3");
        assert_eq!(p3.intertwiners(1).unwrap().len(), 2);
        let preg = FiniteGroupProvider::new(s3_regular(), "s3reg");
        assert_eq!(preg.intertwiners(1).unwrap().len(), 6);
    }

    #[test]
    fn sl2_intertwiner_dims_match_recursion() {
        let provider = Sl2Provider::new(1);
        for m in [2usize, 3] {
            let dim = provider.intertwiners(m).unwrap().len() as u64;
            assert_eq!(dim, super::super::sl2::clebsch_gordan_end_dim(1, m));
        }
    }

    #[test]
    fn sl2_schur_at_length_one() {
        // Irreducible base object: End = scalars.
        for n in [1usize, 2, 3] {
            let provider = Sl2Provider::new(n);
            assert_eq!(provider.intertwiners(1).unwrap().len(), 1);
        }
    }

    #[test]
    fn tensor_power_zero_is_one_dimensional() {
        let g = FiniteGroupProvider::new(s3_permutation(), "s3");
        for m in g.tensor_power_action(0).unwrap() {
            assert!(m.is_identity() && m.rows() == 1);
        }
        let s = Sl2Provider::new(1);
        for m in s.tensor_power_action(0).unwrap() {
            assert!(m.is_zero() && m.rows() == 1);
        }
    }

    #[test]
    fn sl2_tensor_action_weights() {
        // H on V1 ⊗ V1 has eigenvalues {2, 0, 0, −2} on the standard basis.
        let provider = Sl2Provider::new(1);
        let action = provider.tensor_power_action(2).unwrap();
        let h2 = &action[2];
        let expect = [2i64, 0, 0, -2];
        for (i, &w) in expect.iter().enumerate() {
            assert_eq!(h2[(i, i)], GRat::from_int(w));
        }
    }

    #[test]
    fn budget_errors() {
        let mut provider = Sl2Provider::new(3);
        provider.budget = 10;
        assert!(matches!(provider.tensor_power_action(2), Err(crate::Error::Budget(_))));
        provider.budget = 100;
        assert!(provider.tensor_power_action(2).is_ok());
    }
}
