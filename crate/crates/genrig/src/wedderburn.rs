//! Block structure of finite-dimensional *-algebras of matrices: exact
//! standard-identity bounds on block sizes, the averaged fixed space, and a
//! spectral block-profile extraction (exact dimensions, float only for the
//! central splitting step).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{FloatSpan, RowSpan, cluster_multiplicities, commutant, hermitian_eig, rank, span_closure};
use crate::matrix::Matrix;
use crate::scalar::{C64, GRat, Scalar};

/// Multiset of Wedderburn blocks `(irreducible dim dᵢ, multiplicity mᵢ)`
/// of a unitary action, together with the dimension of its fixed subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    pub blocks: Vec<(usize, usize)>,
    pub fixed_dim: usize,
}

impl BlockProfile {
    pub fn max_block_dim(&self) -> usize {
        self.blocks.iter().map(|&(d, _)| d).max().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|&(d, m)| d * m).sum()
    }
}

/// Basis of the unital *-algebra generated by the given matrices
/// (coordinate star; callers with a skewed basis should prefer `span_of`
/// on multiplicatively closed sets).
pub fn algebra_closure(mats: &[Matrix<GRat>], n: usize) -> Vec<Matrix<GRat>> {
    let mut seed = vec![Matrix::identity(n)];
    seed.extend_from_slice(mats);
    span_closure(&seed, mats, true)
}

/// Linear span of an already multiplicatively closed set (a group image):
/// the unital image algebra without any star extension.
pub fn span_of(mats: &[Matrix<GRat>], n: usize) -> Vec<Matrix<GRat>> {
    let mut span = RowSpan::new(n * n);
    let mut basis = Vec::new();
    for m in mats {
        if span.insert(m.flatten()) {
            basis.push(m.clone());
        }
    }
    basis
}

/// Adjoint with respect to the form with Gram matrix M: `M⁻¹ X* M`.
/// With M = I this is the coordinate adjoint.
fn form_star(x: &Matrix<GRat>, gram: Option<&(Matrix<GRat>, Matrix<GRat>)>) -> Matrix<GRat> {
    match gram {
        None => x.adjoint(),
        Some((m, m_inv)) => m_inv.mul(&x.adjoint()).mul(m),
    }
}

/// Float Cholesky factor R with `M = R* R` (upper triangular R), used to
/// move form-self-adjoint elements into standard-Hermitian coordinates.
fn cholesky_upper(m: &Matrix<C64>) -> Matrix<C64> {
    let n = m.rows();
    let mut r: Matrix<C64> = Matrix::zeros(n, n);
    for i in 0..n {
        let mut diag = m[(i, i)];
        for k in 0..i {
            diag -= r[(k, i)].conj() * r[(k, i)];
        }
        let d = diag.re.max(1e-300).sqrt();
        r[(i, i)] = C64::new(d, 0.0);
        for j in (i + 1)..n {
            let mut acc = m[(i, j)];
            for k in 0..i {
                acc -= r[(k, i)].conj() * r[(k, j)];
            }
            r[(i, j)] = acc / d;
        }
    }
    r
}

fn invert_upper(r: &Matrix<C64>) -> Matrix<C64> {
    let n = r.rows();
    let mut inv: Matrix<C64> = Matrix::zeros(n, n);
    for j in (0..n).rev() {
        inv[(j, j)] = C64::new(1.0, 0.0) / r[(j, j)];
        for i in (0..j).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for k in (i + 1)..=j {
                acc += r[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -acc / r[(i, i)];
        }
    }
    inv
}

/// Whether the alternating standard polynomial S_k vanishes identically on
/// the span of `basis`. S_k is multilinear and alternating, so vanishing on
/// strictly increasing basis tuples is decisive.
pub fn standard_identity_vanishes(basis: &[Matrix<GRat>], k: usize) -> bool {
    if basis.len() < k {
        return true;
    }
    let n = basis[0].rows();
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        if !standard_identity_on(basis, &combo, n) {
            return false;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if combo[i] + (k - i) < basis.len() {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn standard_identity_on(basis: &[Matrix<GRat>], combo: &[usize], n: usize) -> bool {
    let k = combo.len();
    let mut acc: Matrix<GRat> = Matrix::zeros(n, n);
    fn rec(
        basis: &[Matrix<GRat>],
        combo: &[usize],
        used: &mut [bool],
        prefix: &Matrix<GRat>,
        depth: usize,
        sign_swaps: usize,
        acc: &mut Matrix<GRat>,
    ) {
        let k = combo.len();
        if depth == k {
            if sign_swaps.is_multiple_of(2) {
                *acc = acc.add(prefix);
            } else {
                *acc = acc.sub(prefix);
            }
            return;
        }
        // Selecting the j-th remaining element costs j transpositions
        // relative to the identity ordering.
        let mut remaining_rank = 0;
        for (slot, &idx) in combo.iter().enumerate() {
            if used[slot] {
                continue;
            }
            used[slot] = true;
            let next = prefix.mul(&basis[idx]);
            rec(basis, combo, used, &next, depth + 1, sign_swaps + remaining_rank, acc);
            used[slot] = false;
            remaining_rank += 1;
        }
    }
    let mut used = vec![false; k];
    rec(basis, combo, &mut used, &Matrix::identity(n), 0, 0, &mut acc);
    acc.is_zero()
}

/// Exact decision: do all Wedderburn blocks of the unital *-subalgebra of
/// `End(C^n)` spanned by `basis` have size ≤ ell? Uses the dimension bound
/// `dim A = Σdᵢ² ≤ ell·Σdᵢmᵢ = ell·n` as a pre-filter and the standard
/// identity S_{2·ell} as the decision.
pub fn max_block_at_most(basis: &[Matrix<GRat>], n: usize, ell: usize) -> bool {
    assert!(ell >= 1, "block bound only meaningful for ell ≥ 1");
    if basis.len() > ell * n {
        return false;
    }
    standard_identity_vanishes(basis, 2 * ell)
}

/// Group-averaged projection of a finite unitary family that is closed under
/// multiplication; its rank is the fixed-space dimension.
pub fn average_projector(unitaries: &[Matrix<GRat>]) -> Matrix<GRat> {
    assert!(!unitaries.is_empty());
    let n = unitaries[0].rows();
    let mut acc: Matrix<GRat> = Matrix::zeros(n, n);
    for u in unitaries {
        acc = acc.add(u);
    }
    acc.scale(&GRat::from_ratio(1, unitaries.len() as i64))
}

pub fn fixed_space_dim(unitaries: &[Matrix<GRat>]) -> usize {
    rank(&average_projector(unitaries))
}

/// Float cross-check: minimum over random self-adjoint samples of an algebra
/// of the maximal eigenvalue multiplicity. Generic spectra of a semisimple
/// algebra with blocks (dᵢ, mᵢ) on the commutant side repeat each value dᵢ
/// times, so sampling the commutant recovers max dᵢ.
pub fn min_max_eigen_multiplicity(
    basis: &[Matrix<GRat>],
    gram: Option<&Matrix<GRat>>,
    samples: usize,
    seed: u64,
) -> Option<usize> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].rows();
    let gram_pair = gram.map(|m| {
        let inv = crate::linalg::invert(m).expect("gram invertible");
        (m.clone(), inv)
    });
    // Move to coordinates where form-self-adjoint elements are Hermitian.
    let (r, r_inv) = match gram {
        Some(m) => {
            let rf = cholesky_upper(&m.to_c64());
            let ri = invert_upper(&rf);
            (Some(rf), Some(ri))
        }
        None => (None, None),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<usize> = None;
    for _ in 0..samples {
        let mut z: Matrix<GRat> = Matrix::zeros(n, n);
        for b in basis {
            let c = rng.random_range(-20i64..=20);
            let c2 = rng.random_range(-20i64..=20);
            let i_c2 = GRat::new(crate::scalar::Rat::ZERO, crate::scalar::Rat::from(c2));
            z = z
                .add(&b.scale(&GRat::from_int(c)))
                .add(&b.scale(&i_c2));
        }
        let zs = z.add(&form_star(&z, gram_pair.as_ref())).scale(&GRat::from_ratio(1, 2));
        let mut zf = zs.to_c64();
        if let (Some(rf), Some(ri)) = (&r, &r_inv) {
            zf = rf.mul(&zf).mul(ri);
        }
        let scale = zf.max_abs().max(1e-12);
        let (vals, _) = hermitian_eig(&zf);
        let cx: Vec<C64> = vals.iter().map(|&v| C64::new(v, 0.0)).collect();
        let mult = cluster_multiplicities(&cx, 1e-6 * scale);
        let mx = mult.first().copied().unwrap_or(n);
        best = Some(best.map_or(mx, |b| b.min(mx)));
    }
    best
}

/// Wedderburn block profile of a finite set of operators closed under
/// multiplication (a group image), unitary with respect to the form whose
/// Gram matrix on the coordinate basis is `gram` (None = standard form).
/// Dimensions of the algebra, commutant and center are exact; only the
/// central eigen-splitting runs in floats, and every candidate split is
/// validated against the exact dimension identities Σdᵢmᵢ = n,
/// Σdᵢ² = dim A, Σmᵢ² = dim A'.
pub fn block_profile(
    action: &[Matrix<GRat>],
    gram: Option<&Matrix<GRat>>,
    seed: u64,
) -> crate::Result<BlockProfile> {
    assert!(!action.is_empty(), "need at least the identity");
    let n = action[0].rows();
    if n == 0 {
        return Ok(BlockProfile { blocks: vec![], fixed_dim: 0 });
    }
    let mut with_id = vec![Matrix::identity(n)];
    with_id.extend_from_slice(action);
    let a_basis = span_of(&with_id, n);
    let c_basis = commutant(action, n);
    let dim_a = a_basis.len();
    let dim_c = c_basis.len();
    let fixed_dim = fixed_space_dim(action);

    // Center: elements of the commutant lying in span(A).
    let mut z_basis: Vec<Matrix<GRat>> = Vec::new();
    {
        let mut cols: Vec<Vec<GRat>> = a_basis.iter().map(|m| m.flatten()).collect();
        cols.extend(
            c_basis
                .iter()
                .map(|m| m.flatten().iter().map(|x| x.neg()).collect::<Vec<_>>()),
        );
        let sys = Matrix::from_cols(&cols);
        for kvec in crate::linalg::kernel(&sys) {
            let coeffs = &kvec[dim_a..];
            let mut z: Matrix<GRat> = Matrix::zeros(n, n);
            for (c, m) in coeffs.iter().zip(&c_basis) {
                if !c.is_zero() {
                    z = z.add(&m.scale(c));
                }
            }
            if !z.is_zero() {
                z_basis.push(z);
            }
        }
        let mut span = RowSpan::new(n * n);
        z_basis.retain(|z| span.insert(z.flatten()));
    }
    let k = z_basis.len();
    if k == 0 {
        return Err(crate::Error::Clustering("empty center".into()));
    }

    let validate = |blocks: &[(usize, usize)]| -> bool {
        blocks.iter().map(|&(d, m)| d * m).sum::<usize>() == n
            && blocks.iter().map(|&(d, _)| d * d).sum::<usize>() == dim_a
            && blocks.iter().map(|&(_, m)| m * m).sum::<usize>() == dim_c
            && blocks.iter().all(|&(d, m)| d >= 1 && m >= 1)
    };

    if k == 1 {
        let d = (dim_a as f64).sqrt().round() as usize;
        let m = (dim_c as f64).sqrt().round() as usize;
        let blocks = vec![(d, m)];
        if !validate(&blocks) {
            return Err(crate::Error::Clustering(format!(
                "single-block dimensions are not squares: dim A = {dim_a}, dim C = {dim_c}"
            )));
        }
        return Ok(BlockProfile { blocks, fixed_dim });
    }

    // Spectral split by a random form-self-adjoint central element, carried
    // into standard-Hermitian coordinates through the Cholesky factor of the
    // Gram matrix.
    let gram_pair = gram.map(|m| {
        let inv = crate::linalg::invert(m).expect("gram invertible");
        (m.clone(), inv)
    });
    let (rf, ri) = match gram {
        Some(m) => {
            let rf = cholesky_upper(&m.to_c64());
            let ri = invert_upper(&rf);
            (Some(rf), Some(ri))
        }
        None => (None, None),
    };
    let to_std = |x: &Matrix<C64>| -> Matrix<C64> {
        match (&rf, &ri) {
            (Some(rf), Some(ri)) => rf.mul(x).mul(ri),
            _ => x.clone(),
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..12 {
        let mut z: Matrix<GRat> = Matrix::zeros(n, n);
        for b in &z_basis {
            let c = rng.random_range(-20i64..=20);
            let c2 = rng.random_range(-20i64..=20);
            let i_c2 = GRat::new(crate::scalar::Rat::ZERO, crate::scalar::Rat::from(c2));
            z = z.add(&b.scale(&GRat::from_int(c))).add(&b.scale(&i_c2));
        }
        let zs = z.add(&form_star(&z, gram_pair.as_ref())).scale(&GRat::from_ratio(1, 2));
        let zf = to_std(&zs.to_c64());
        let scale = zf.max_abs().max(1e-12);
        let (vals, vecs) = hermitian_eig(&zf);
        let radius = 1e-6 * scale;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match clusters.last_mut() {
                Some(cl) if (vals[i] - vals[*cl.last().unwrap()]).abs() <= radius => cl.push(i),
                _ => clusters.push(vec![i]),
            }
        }
        if clusters.len() != k {
            continue 'attempt; // coincidental spectrum; retry with new coefficients
        }
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        for cl in &clusters {
            let mut p: Matrix<C64> = Matrix::zeros(n, n);
            for &i in cl {
                let v = vecs.col(i);
                for r in 0..n {
                    for c in 0..n {
                        p[(r, c)] += v[r] * v[c].conj();
                    }
                }
            }
            let rank_of = |mats: &[Matrix<GRat>]| -> usize {
                let mut span = FloatSpan::new(n * n, 1e-8);
                let mut count = 0;
                for m in mats {
                    let compressed = p.mul(&to_std(&m.to_c64())).mul(&p);
                    if span.insert(compressed.flatten()) {
                        count += 1;
                    }
                }
                count
            };
            let da2 = rank_of(&a_basis);
            let mc2 = rank_of(&c_basis);
            let d = (da2 as f64).sqrt().round() as usize;
            let m = (mc2 as f64).sqrt().round() as usize;
            if d * d != da2 || m * m != mc2 {
                continue 'attempt;
            }
            blocks.push((d, m));
        }
        blocks.sort_unstable();
        if !validate(&blocks) {
            continue 'attempt;
        }
        return Ok(BlockProfile { blocks, fixed_dim });
    }
    Err(crate::Error::Clustering(
        "central spectral split failed after retries; decrease tolerance".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;
    use crate::providers::s3_permutation;

    fn identity_only(n: usize) -> Vec<Matrix<GRat>> {
        vec![Matrix::identity(n)]
    }

    #[test]
    fn trivial_action_profile() {
        let profile = block_profile(&identity_only(3), None, 7).unwrap();
        assert_eq!(profile.blocks, vec![(1, 3)]);
        assert_eq!(profile.fixed_dim, 3);
    }

    #[test]
    fn sign_action_on_a_line() {
        let minus: Matrix<GRat> = Matrix::from_ints(&[&[-1]]);
        let profile = block_profile(&[Matrix::identity(1), minus], None, 7).unwrap();
        assert_eq!(profile.blocks, vec![(1, 1)]);
        assert_eq!(profile.fixed_dim, 0);
    }

    #[test]
    fn s3_standard_block() {
        // Restrict the permutation action to the 2-dim standard summand.
        let rep = s3_permutation();
        let w: Subspace<GRat> =
            Subspace::new(Matrix::from_ints(&[&[1, 1], &[-1, 0], &[0, -1]])).unwrap();
        let restricted: Vec<Matrix<GRat>> = rep
            .images()
            .iter()
            .map(|g| {
                let gb = g.mul(w.basis());
                let mut cols = Vec::new();
                for j in 0..gb.cols() {
                    let col = gb.col(j);
                    let sol = crate::linalg::solve(w.basis(), &col).expect("W invariant");
                    cols.push(sol);
                }
                Matrix::from_cols(&cols)
            })
            .collect();
        let gram = Matrix::from_fn(2, 2, |i, j| {
            let bi = w.basis().col(i);
            let bj = w.basis().col(j);
            bi.iter().zip(&bj).fold(GRat::ZERO, |acc, (x, y)| acc.add(&x.conj().mul(y)))
        });
        let profile = block_profile(&restricted, Some(&gram), 11).unwrap();
        assert_eq!(profile.blocks, vec![(2, 1)]);
        assert_eq!(profile.fixed_dim, 0);
        let alg = algebra_closure(&restricted, 2);
        assert!(!max_block_at_most(&alg, 2, 1));
        assert!(max_block_at_most(&alg, 2, 2));
        // The commutant is scalar; its generic spectra are fully degenerate,
        // exposing d = 2 as the repeated multiplicity.
        let mm = min_max_eigen_multiplicity(&commutant(&restricted, 2), Some(&gram), 4, 3).unwrap();
        assert_eq!(mm, 2);
    }

    #[test]
    fn standard_identity_detects_block_size() {
        // Full M2 satisfies S4 but not S2.
        let mut basis = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m: Matrix<GRat> = Matrix::zeros(2, 2);
                m[(i, j)] = GRat::ONE;
                basis.push(m);
            }
        }
        assert!(standard_identity_vanishes(&basis, 4));
        assert!(!standard_identity_vanishes(&basis, 2));
        assert!(max_block_at_most(&basis, 2, 2));
        assert!(!max_block_at_most(&basis, 2, 1));
        let d1: Matrix<GRat> = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let d2: Matrix<GRat> = Matrix::from_ints(&[&[0, 0], &[0, 1]]);
        assert!(standard_identity_vanishes(&[d1, d2], 2));
    }

    #[test]
    fn mixed_action_two_blocks() {
        // C2 acting on C^2 by diag(1, −1): two 1-dim blocks, fixed dim 1.
        let g: Matrix<GRat> = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let profile = block_profile(&[Matrix::identity(2), g], None, 5).unwrap();
        assert_eq!(profile.blocks, vec![(1, 1), (1, 1)]);
        assert_eq!(profile.fixed_dim, 1);
    }
}
