//! Finite-dimensional associative algebras and generation machinery: monomial
//! spans of generator tuples, stabilization-based generation tests, the
//! explicit diagonal/shift generating pair for sums of matrix algebras, and
//! seeded Monte Carlo density estimates over random tuples.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::linalg::{FloatSpan, RowSpan, Subspace};
use crate::report::trial_rng;
use crate::matrix::Matrix;
use crate::scalar::{C64, GRat, Scalar};

/// A finite-dimensional associative unital algebra in coordinates: the
/// multiplication tensor on a fixed basis, the coordinates of 1, an optional
/// involution, and (when built from matrix blocks) the block realization.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    dim: usize,
    /// mul_table[i][j] = coordinates of eᵢ·eⱼ.
    mul_table: Vec<Vec<Vec<GRat>>>,
    unit: Vec<GRat>,
    /// Coordinates of eᵢ* when an involution is declared.
    star_basis: Option<Vec<Vec<GRat>>>,
    /// Block sizes when the algebra is ⊕ M_{nᵢ} embedded block-diagonally.
    matrix_blocks: Option<Vec<usize>>,
}

/// A tuple of algebra elements in coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTuple(pub Vec<Vec<GRat>>);

impl FinDimAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[GRat] {
        &self.unit
    }

    pub fn has_star(&self) -> bool {
        self.star_basis.is_some()
    }

    pub fn block_sizes(&self) -> Option<&[usize]> {
        self.matrix_blocks.as_deref()
    }

    pub fn mul(&self, x: &[GRat], y: &[GRat]) -> Vec<GRat> {
        let mut out = vec![GRat::ZERO; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, t) in self.mul_table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = out[k].add(&c.mul(t));
                    }
                }
            }
        }
        out
    }

    pub fn star(&self, x: &[GRat]) -> Option<Vec<GRat>> {
        let sb = self.star_basis.as_ref()?;
        let mut out = vec![GRat::ZERO; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let c = xi.conj();
            for (k, t) in sb[i].iter().enumerate() {
                if !t.is_zero() {
                    out[k] = out[k].add(&c.mul(t));
                }
            }
        }
        Some(out)
    }

    /// Build from structure constants; validates associativity on basis
    /// triples and that the unit acts as a two-sided identity.
    pub fn from_structure_constants(
        mul_table: Vec<Vec<Vec<GRat>>>,
        unit: Vec<GRat>,
    ) -> crate::Result<Self> {
        let dim = mul_table.len();
        if dim == 0
            || unit.len() != dim
            || mul_table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(crate::Error::Validation("structure tensor shape mismatch".into()));
        }
        let alg = FinDimAlgebra {
            dim,
            mul_table,
            unit,
            star_basis: None,
            matrix_blocks: None,
        };
        let basis = |i: usize| -> Vec<GRat> {
            let mut v = vec![GRat::ZERO; dim];
            v[i] = GRat::ONE;
            v
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = alg.mul(&alg.mul(&basis(i), &basis(j)), &basis(k));
                    let rhs = alg.mul(&basis(i), &alg.mul(&basis(j), &basis(k)));
                    if lhs != rhs {
                        return Err(crate::Error::Validation(format!(
                            "multiplication is not associative at basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..dim {
            let e = basis(i);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(crate::Error::Validation(format!(
                    "declared unit is not a two-sided identity on e_{i}"
                )));
            }
        }
        Ok(alg)
    }

    /// Build from a faithful matrix realization (a linearly independent list
    /// of matrices whose span is closed under multiplication and contains
    /// the identity). Declares the involution when the span is *-closed.
    pub fn from_matrix_basis(mats: Vec<Matrix<GRat>>) -> crate::Result<Self> {
        if mats.is_empty() {
            return Err(crate::Error::Validation("empty basis".into()));
        }
        let n = mats[0].rows();
        if mats.iter().any(|m| !m.is_square() || m.rows() != n) {
            return Err(crate::Error::Validation("basis matrices must be square, equal size".into()));
        }
        let dim = mats.len();
        let mut span = RowSpan::new(n * n);
        for m in &mats {
            if !span.insert(m.flatten()) {
                return Err(crate::Error::Validation("basis matrices are dependent".into()));
            }
        }
        let expand = |m: &Matrix<GRat>| -> Option<Vec<GRat>> {
            // Solve Σ cᵢ matsᵢ = m.
            let cols: Vec<Vec<GRat>> = mats.iter().map(|b| b.flatten()).collect();
            let sys = Matrix::from_cols(&cols);
            crate::linalg::solve(&sys, &m.flatten())
        };
        let mut mul_table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = mats[i].mul(&mats[j]);
                mul_table[i][j] = expand(&prod).ok_or_else(|| {
                    crate::Error::Validation(format!(
                        "span is not closed under multiplication at ({i},{j})"
                    ))
                })?;
            }
        }
        let unit = expand(&Matrix::identity(n))
            .ok_or_else(|| crate::Error::Validation("identity is not in the span".into()))?;
        let star_basis: Option<Vec<Vec<GRat>>> =
            mats.iter().map(|m| expand(&m.adjoint())).collect();
        Ok(FinDimAlgebra {
            dim,
            mul_table,
            unit,
            star_basis,
            matrix_blocks: None,
        })
    }

    /// The direct sum ⊕ M_{nᵢ} embedded block-diagonally in M_n, n = Σnᵢ,
    /// with the elementary-matrix basis.
    pub fn matrix_blocks(block_sizes: &[usize]) -> crate::Result<Self> {
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(crate::Error::Validation("block sizes must be positive".into()));
        }
        let n: usize = block_sizes.iter().sum();
        let mut mats = Vec::new();
        let mut offset = 0;
        for &b in block_sizes {
            for i in 0..b {
                for j in 0..b {
                    let mut m: Matrix<GRat> = Matrix::zeros(n, n);
                    m[(offset + i, offset + j)] = GRat::ONE;
                    mats.push(m);
                }
            }
            offset += b;
        }
        let mut alg = Self::from_matrix_basis(mats)?;
        alg.matrix_blocks = Some(block_sizes.to_vec());
        Ok(alg)
    }

    /// The dim-(n+1) algebra k[x₁..xₙ] with all pairwise products of the xᵢ
    /// equal to zero (basis: 1, x₁, …, xₙ).
    pub fn nilpotent_square_zero(n: usize) -> Self {
        let dim = n + 1;
        let mut table = vec![vec![vec![GRat::ZERO; dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut out = vec![GRat::ZERO; dim];
                if i == 0 {
                    out[j] = GRat::ONE;
                } else if j == 0 {
                    out[i] = GRat::ONE;
                } // else: xᵢ·xⱼ = 0
                table[i][j] = out;
            }
        }
        let mut unit = vec![GRat::ZERO; dim];
        unit[0] = GRat::ONE;
        Self::from_structure_constants(table, unit).expect("square-zero table is associative")
    }
}

/// Span of all words of length ≤ m in the tuple (empty word = unit
/// included), optionally closed under the declared involution of the tuple
/// entries. Monotone nondecreasing in m.
pub fn monomial_span(
    algebra: &FinDimAlgebra,
    tuple: &GeneratorTuple,
    m: usize,
    star: bool,
) -> crate::Result<Subspace<GRat>> {
    let (span, _) = monomial_span_layers(algebra, tuple, Some(m), star)?;
    Ok(Subspace::spanned_by(algebra.dim(), span.rows()))
}

/// Layer-by-layer monomial span. Runs until the word-length cap (when given)
/// or until a layer adds nothing. Returns the span and the stabilization
/// degree: the first m with span(m) = span(m+1).
fn monomial_span_layers(
    algebra: &FinDimAlgebra,
    tuple: &GeneratorTuple,
    cap: Option<usize>,
    star: bool,
) -> crate::Result<(RowSpan<GRat>, usize)> {
    if star && !algebra.has_star() {
        return Err(crate::Error::Validation(
            "star words requested on an algebra without an involution".into(),
        ));
    }
    for t in &tuple.0 {
        if t.len() != algebra.dim() {
            return Err(crate::Error::Dim("tuple element has wrong coordinate length".into()));
        }
    }
    let mut letters: Vec<Vec<GRat>> = tuple.0.clone();
    if star {
        for t in &tuple.0 {
            letters.push(algebra.star(t).expect("involution checked above"));
        }
    }
    let mut span = RowSpan::new(algebra.dim());
    span.insert(algebra.unit().to_vec());
    // frontier: basis representatives of words of the current exact length.
    let mut frontier: Vec<Vec<GRat>> = vec![algebra.unit().to_vec()];
    let mut length = 0usize;
    loop {
        if let Some(c) = cap {
            if length >= c {
                return Ok((span, length));
            }
        }
        let mut next = Vec::new();
        for w in &frontier {
            for a in &letters {
                let prod = algebra.mul(w, a);
                if span.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            // span(length) already equals span(length + 1): stabilized.
            return Ok((span, length));
        }
        frontier = next;
        length += 1;
    }
}

/// Generation test by monomial-span stabilization: the span of words is
/// multiplicatively generated, so the first plateau is a genuine fixpoint.
/// Returns (generates, stabilization_degree).
pub fn is_generating(
    algebra: &FinDimAlgebra,
    tuple: &GeneratorTuple,
    star: bool,
) -> crate::Result<(bool, usize)> {
    let (span, degree) = monomial_span_layers(algebra, tuple, None, star)?;
    Ok((span.dim() == algebra.dim(), degree))
}

/// The diagonal/shift pair in ⊕ M_{nᵢ}: `a = diag(λ)`, `b = Σ e_{ij}` over
/// off-diagonal positions inside blocks. Requires the λ to be nonzero,
/// pairwise distinct, with pairwise distinct ratios λᵢ/λⱼ (i ≠ j); under
/// those conditions the pair generates the algebra.
pub fn explicit_pair(
    block_sizes: &[usize],
    lambdas: &[GRat],
) -> crate::Result<(FinDimAlgebra, GeneratorTuple)> {
    let n: usize = block_sizes.iter().sum();
    if lambdas.len() != n {
        return Err(crate::Error::Validation(format!(
            "need {n} lambdas for block sizes {block_sizes:?}, got {}",
            lambdas.len()
        )));
    }
    for (i, l) in lambdas.iter().enumerate() {
        if l.is_zero() {
            return Err(crate::Error::Validation(format!("lambda_{i} is zero")));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if lambdas[i] == lambdas[j] {
                return Err(crate::Error::Validation(format!(
                    "lambdas {i} and {j} coincide"
                )));
            }
        }
    }
    // All ordered ratios must be pairwise distinct: λᵢ/λⱼ = λₖ/λₗ is
    // forbidden for (i,j) ≠ (k,l), i ≠ j, k ≠ l.
    let mut ratios: Vec<(usize, usize, GRat)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let r = lambdas[i].div(&lambdas[j]);
            if let Some((pi, pj, _)) = ratios.iter().find(|(_, _, q)| *q == r) {
                return Err(crate::Error::Validation(format!(
                    "ratio collision: lambda_{i}/lambda_{j} = lambda_{pi}/lambda_{pj} = {r}"
                )));
            }
            ratios.push((i, j, r));
        }
    }
    let algebra = FinDimAlgebra::matrix_blocks(block_sizes)?;
    // Coordinates over the elementary-matrix basis, ordered block by block
    // row-major: within a block of size b, (i,j) sits at offset i*b + j.
    let mut a = vec![GRat::ZERO; algebra.dim()];
    let mut b = vec![GRat::ZERO; algebra.dim()];
    let mut base = 0usize;
    let mut diag = 0usize;
    for &bs in block_sizes {
        for i in 0..bs {
            a[base + i * bs + i] = lambdas[diag + i].clone();
            for j in 0..bs {
                if i != j {
                    b[base + i * bs + j] = GRat::ONE;
                }
            }
        }
        base += bs * bs;
        diag += bs;
    }
    Ok((algebra, GeneratorTuple(vec![a, b])))
}

/// Sampling distribution for density experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensitySampler {
    /// Independent standard Gaussians on a real basis of the self-adjoint
    /// part of ⊕ M_{nᵢ}; runs the float span engine.
    GaussianSelfAdjoint,
    /// Uniform small rationals on the coordinate space; exact span engine.
    UniformRational,
}

/// Outcome of a density run. Deterministic given the seed: trial k draws
/// from a stream derived from (seed, k), so scheduling cannot reorder draws.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DensityOutcome {
    pub trials: usize,
    pub generating: usize,
    pub non_generating_trials: Vec<u64>,
}

impl DensityOutcome {
    pub fn fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.generating as f64 / self.trials as f64
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> GRat {
    // Nonzero numerators: an atom at 0 puts positive probability on proper
    // coordinate subalgebras (e.g. joint triangularity), which a genericity
    // sampler must avoid.
    let num = loop {
        let r = rng.random_range(-99i64..=99);
        if r != 0 {
            break r;
        }
    };
    let den = rng.random_range(1i64..=7);
    GRat::from_ratio(num, den)
}

fn gaussian_selfadjoint_block(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Matrix<C64> {
    let n: usize = sizes.iter().sum();
    let mut m: Matrix<C64> = Matrix::zeros(n, n);
    let normal = StandardNormal;
    let mut offset = 0;
    for &b in sizes {
        for i in 0..b {
            let d: f64 = normal.sample(rng);
            m[(offset + i, offset + i)] = C64::new(d, 0.0);
            for j in (i + 1)..b {
                let re: f64 = normal.sample(rng);
                let im: f64 = normal.sample(rng);
                let z = C64::new(re / 2f64.sqrt(), im / 2f64.sqrt());
                m[(offset + i, offset + j)] = z;
                m[(offset + j, offset + i)] = z.conj();
            }
        }
        offset += b;
    }
    m
}

/// Float-mode generation test for tuples of matrices in ⊕ M_{nᵢ} ⊂ M_n:
/// word spans with a tolerance-based independence test.
pub fn is_generating_float(target_dim: usize, tuple: &[Matrix<C64>], tol: f64) -> bool {
    let n = tuple.first().map_or(0, Matrix::rows);
    let mut span = FloatSpan::new(n * n, tol);
    let id: Matrix<C64> = Matrix::identity(n);
    span.insert(id.flatten());
    let mut frontier: Vec<Matrix<C64>> = vec![id];
    loop {
        let mut next = Vec::new();
        for w in &frontier {
            for a in tuple {
                let prod = w.mul(a);
                if span.insert(prod.flatten()) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            return span.dim() == target_dim;
        }
        if span.dim() > target_dim {
            // numerically overshot: treat as generating only if exact match
            return false;
        }
        frontier = next;
    }
}

/// Fraction of sampled n-tuples that generate. Trials are distributed over
/// worker threads; every record is reproducible from (seed, trial index).
pub fn sample_generation_density(
    algebra: &FinDimAlgebra,
    tuple_size: usize,
    trials: usize,
    sampler: DensitySampler,
    star: bool,
    seed: u64,
    tol: f64,
) -> crate::Result<DensityOutcome> {
    if trials == 0 {
        return Err(crate::Error::Validation("trials must be ≥ 1".into()));
    }
    if sampler == DensitySampler::GaussianSelfAdjoint && algebra.block_sizes().is_none() {
        return Err(crate::Error::Validation(
            "gaussian-selfadjoint sampling needs a matrix-block algebra".into(),
        ));
    }
    let results: Vec<(u64, bool)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let ok = match sampler {
                DensitySampler::UniformRational => {
                    let tuple = GeneratorTuple(
                        (0..tuple_size)
                            .map(|_| (0..algebra.dim()).map(|_| random_rational(&mut rng)).collect())
                            .collect(),
                    );
                    is_generating(algebra, &tuple, star).map(|(g, _)| g).unwrap_or(false)
                }
                DensitySampler::GaussianSelfAdjoint => {
                    let sizes = algebra.block_sizes().unwrap();
                    let mats: Vec<Matrix<C64>> = (0..tuple_size)
                        .map(|_| gaussian_selfadjoint_block(&mut rng, sizes))
                        .collect();
                    is_generating_float(algebra.dim(), &mats, tol)
                }
            };
            (t, ok)
        })
        .collect();
    let generating = results.iter().filter(|(_, ok)| *ok).count();
    let mut non_generating_trials: Vec<u64> =
        results.iter().filter(|(_, ok)| !ok).map(|(t, _)| *t).collect();
    non_generating_trials.sort_unstable();
    Ok(DensityOutcome {
        trials,
        generating,
        non_generating_trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(alg: &FinDimAlgebra, entries: &[(usize, i64)]) -> Vec<GRat> {
        let mut v = vec![GRat::ZERO; alg.dim()];
        for &(i, c) in entries {
            v[i] = GRat::from_int(c);
        }
        v
    }

    #[test]
    fn m2_with_diag_and_swap_generates_at_degree_3() {
        // A = M2, tuple (diag(1,2), e12+e21): the 14 words of length ≤ 3
        // row-reduce to the full 4-dimensional algebra.
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let a = coords(&alg, &[(0, 1), (3, 2)]);
        let b = coords(&alg, &[(1, 1), (2, 1)]);
        let tuple = GeneratorTuple(vec![a, b]);
        let m3 = monomial_span(&alg, &tuple, 3, false).unwrap();
        assert_eq!(m3.dim(), 4);
        let (gen, _) = is_generating(&alg, &tuple, false).unwrap();
        assert!(gen);
        // m = 0 is the unit line.
        let m0 = monomial_span(&alg, &tuple, 0, false).unwrap();
        assert_eq!(m0.dim(), 1);
        // Monotone in m.
        let mut last = 0;
        for m in 0..=4 {
            let d = monomial_span(&alg, &tuple, m, false).unwrap().dim();
            assert!(d >= last);
            last = d;
        }
    }

    #[test]
    fn full_basis_tuple_stabilizes_at_degree_one_or_less() {
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let tuple = GeneratorTuple(
            (0..4)
                .map(|i| coords(&alg, &[(i, 1)]))
                .collect(),
        );
        let (gen, degree) = is_generating(&alg, &tuple, false).unwrap();
        assert!(gen);
        assert!(degree <= 1);
    }

    #[test]
    fn square_zero_algebra_needs_n_generators() {
        // dim 3 algebra k[x1,x2]/(xi xj): single elements never generate
        // (words of length ≥ 2 vanish), pairs of the xᵢ do... only the full
        // set of nilpotents spans. A single element: span{1, x} has dim 2.
        let alg = FinDimAlgebra::nilpotent_square_zero(2);
        let x1 = coords(&alg, &[(1, 1)]);
        let tuple = GeneratorTuple(vec![x1.clone()]);
        let span = monomial_span(&alg, &tuple, 5, false).unwrap();
        assert_eq!(span.dim(), 2);
        let (gen, _) = is_generating(&alg, &tuple, false).unwrap();
        assert!(!gen);
        // Mixed single element x1 + x2 also fails.
        let mixed = GeneratorTuple(vec![coords(&alg, &[(1, 1), (2, 1)])]);
        assert!(!is_generating(&alg, &mixed, false).unwrap().0);
        // The pair (x1, x2) does generate.
        let pair = GeneratorTuple(vec![x1, coords(&alg, &[(2, 1)])]);
        assert!(is_generating(&alg, &pair, false).unwrap().0);
    }

    #[test]
    fn explicit_pair_examples() {
        // Single 1×1 block.
        let (alg, t) = explicit_pair(&[1], &[GRat::ONE]).unwrap();
        assert!(is_generating(&alg, &t, false).unwrap().0);
        // 2×2 with λ = (1, 2).
        let (alg, t) = explicit_pair(&[2], &[GRat::from_int(1), GRat::from_int(2)]).unwrap();
        assert!(is_generating(&alg, &t, false).unwrap().0);
        // Ratio collision (1,2,4): 2/1 = 4/2.
        let err = explicit_pair(&[1, 2], &[GRat::from_int(1), GRat::from_int(2), GRat::from_int(4)]);
        match err {
            Err(crate::Error::Validation(msg)) => assert!(msg.contains("ratio collision"), "{msg}"),
            other => panic!("expected ratio rejection, got {other:?}"),
        }
        // Zero and repeated lambdas rejected.
        assert!(explicit_pair(&[2], &[GRat::ZERO, GRat::ONE]).is_err());
        assert!(explicit_pair(&[2], &[GRat::ONE, GRat::ONE]).is_err());
    }

    #[test]
    fn explicit_pair_generates_for_suite_profiles() {
        let lambda_sets: Vec<Vec<i64>> = vec![
            vec![2, 3],
            vec![2, 3, 7],
            vec![2, 3, 7, 11, 31],
            vec![2, 3, 7, 43],
        ];
        let profiles: Vec<Vec<usize>> = vec![vec![2], vec![1, 2], vec![2, 3], vec![1, 1, 2]];
        for (profile, lambdas) in profiles.iter().zip(&lambda_sets) {
            let l: Vec<GRat> = lambdas.iter().map(|&v| GRat::from_int(v)).collect();
            let (alg, t) = explicit_pair(profile, &l).unwrap();
            let (gen, _) = is_generating(&alg, &t, false).unwrap();
            assert!(gen, "explicit pair fails on profile {profile:?}");
        }
    }

    #[test]
    fn density_trivial_algebra_always_generates() {
        let alg = FinDimAlgebra::matrix_blocks(&[1]).unwrap();
        let out = sample_generation_density(&alg, 1, 50, DensitySampler::UniformRational, false, 7, 1e-9)
            .unwrap();
        assert_eq!(out.generating, 50);
    }

    #[test]
    fn density_single_elements_never_generate_m2() {
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let out = sample_generation_density(&alg, 1, 60, DensitySampler::UniformRational, false, 11, 1e-9)
            .unwrap();
        assert_eq!(out.generating, 0);
        assert_eq!(out.non_generating_trials.len(), 60);
    }

    #[test]
    fn density_gaussian_pairs_generate_m2() {
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let out = sample_generation_density(
            &alg,
            2,
            100,
            DensitySampler::GaussianSelfAdjoint,
            false,
            13,
            1e-9,
        )
        .unwrap();
        assert!(out.generating >= 99, "got {}", out.generating);
    }

    #[test]
    fn density_deterministic_under_seed() {
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let a = sample_generation_density(&alg, 2, 40, DensitySampler::UniformRational, false, 5, 1e-9)
            .unwrap();
        let b = sample_generation_density(&alg, 2, 40, DensitySampler::UniformRational, false, 5, 1e-9)
            .unwrap();
        assert_eq!(a.generating, b.generating);
        assert_eq!(a.non_generating_trials, b.non_generating_trials);
    }

    #[test]
    fn substitution_invariance() {
        // aᵢ ↦ aᵢ + p(a₁..aᵢ₋₁) preserves the generated algebra.
        let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
        let a = coords(&alg, &[(0, 1), (3, 2)]);
        let b = coords(&alg, &[(1, 1), (2, 1)]);
        let tuple = GeneratorTuple(vec![a.clone(), b.clone()]);
        let (gen0, _) = is_generating(&alg, &tuple, false).unwrap();
        // b ↦ b + a² − 3a + 2
        let a2 = alg.mul(&a, &a);
        let mut shifted = b.clone();
        for k in 0..alg.dim() {
            shifted[k] = shifted[k]
                .add(&a2[k])
                .sub(&a[k].mul(&GRat::from_int(3)))
                .add(&alg.unit()[k].mul(&GRat::from_int(2)));
        }
        let subst = GeneratorTuple(vec![a, shifted]);
        let (gen1, _) = is_generating(&alg, &subst, false).unwrap();
        assert_eq!(gen0, gen1);
    }

    #[test]
    fn star_on_plain_structure_constants_errors() {
        let alg = FinDimAlgebra::nilpotent_square_zero(2);
        let t = GeneratorTuple(vec![coords(&alg, &[(1, 1)])]);
        assert!(matches!(
            monomial_span(&alg, &t, 2, true),
            Err(crate::Error::Validation(_))
        ));
    }

    #[test]
    fn associativity_rejected_on_bad_table() {
        // Basis (1, x, y) with x·x = y, x·y = 1, y·x = 0: then (xx)x = yx = 0
        // while x(xx) = xy = 1, so the table is not associative.
        let e = |i: usize| -> Vec<GRat> {
            let mut v = vec![GRat::ZERO; 3];
            v[i] = GRat::ONE;
            v
        };
        let zero = vec![GRat::ZERO; 3];
        let table = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(0)],
            vec![e(2), zero.clone(), zero],
        ];
        match FinDimAlgebra::from_structure_constants(table, e(0)) {
            Err(crate::Error::Validation(msg)) => assert!(msg.contains("associative"), "{msg}"),
            other => panic!("expected associativity rejection, got {:?}", other.map(|_| ())),
        }
    }
}
