//! Float-mode spectral routines. One-sided Jacobi keeps small singular
//! values accurate (no normal-equation squaring), and normal matrices are
//! diagonalized through random Hermitian combinations of their real and
//! imaginary parts, with per-vector residual verification.

use crate::matrix::Matrix;
use crate::scalar::C64;

const SWEEP_EPS: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// One-sided Jacobi: returns (singular values descending, right factor V)
/// with `M V = U Σ` for some isometry U.
pub fn svd_right(m: &Matrix<C64>) -> (Vec<f64>, Matrix<C64>) {
    let n = m.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.col(j)).collect();
    let mut v = Matrix::<C64>::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let a: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let c: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let cn = c.norm();
                if cn <= SWEEP_EPS * (a * b).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                off = off.max(cn / (a * b).sqrt().max(f64::MIN_POSITIVE));
                // Unitary U = [[cs, sn],[−φ̄·sn, φ̄·cs]] with φ the phase of
                // the Gram off-diagonal makes U*·Gram·U diagonal.
                let phase_conj = (c / cn).conj();
                let tau = (b - a) / (2.0 * cn);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..cols[p].len() {
                    let u = cols[p][i];
                    let w = cols[q][i];
                    cols[p][i] = u * cs - w * (phase_conj * sn);
                    cols[q][i] = u * sn + w * (phase_conj * cs);
                }
                for i in 0..n {
                    let u = v[(i, p)];
                    let w = v[(i, q)];
                    v[(i, p)] = u * cs - w * (phase_conj * sn);
                    v[(i, q)] = u * sn + w * (phase_conj * cs);
                }
            }
        }
        if off <= SWEEP_EPS {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sigmas: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap());
    let sorted_sigma: Vec<f64> = order.iter().map(|&i| sigmas[i]).collect();
    let sorted_v = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (sorted_sigma, sorted_v)
}

pub fn singular_values(m: &Matrix<C64>) -> Vec<f64> {
    svd_right(m).0
}

/// Number of singular values above `tol * σ_max`; 0 for the zero matrix.
pub fn rank_f(m: &Matrix<C64>, tol: f64) -> usize {
    let sigma = singular_values(m);
    let Some(&smax) = sigma.first() else { return 0 };
    if smax == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol * smax).count()
}

/// Orthonormal basis of the numerical kernel (right singular vectors with
/// σ ≤ tol·σ_max), as column vectors.
pub fn kernel_f(m: &Matrix<C64>, tol: f64) -> Vec<Vec<C64>> {
    let (sigma, v) = svd_right(m);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let mut out = Vec::new();
    for (j, &s) in sigma.iter().enumerate() {
        if smax == 0.0 || s <= tol * smax {
            out.push(v.col(j));
        }
    }
    out
}

/// Jacobi eigendecomposition of a Hermitian matrix: (eigenvalues, unitary V)
/// with `M = V diag(λ) V*`. Eigenvalues are not sorted.
pub fn hermitian_eig(m: &Matrix<C64>) -> (Vec<f64>, Matrix<C64>) {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::<C64>::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let c = a[(p, q)];
                let cn = c.norm();
                if cn <= SWEEP_EPS * scale {
                    continue;
                }
                off = off.max(cn);
                // A ← U* A U with U = [[cs, sn],[−φ̄·sn, φ̄·cs]], φ the phase
                // of a_pq; diagonalizes the (p,q) principal block.
                let phase_conj = (c / cn).conj();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * cn);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                // Column update A ← A·U.
                for i in 0..n {
                    let x = a[(i, p)];
                    let y = a[(i, q)];
                    a[(i, p)] = x * cs - y * (phase_conj * sn);
                    a[(i, q)] = x * sn + y * (phase_conj * cs);
                }
                // Row update A ← U*·A.
                for j in 0..n {
                    let x = a[(p, j)];
                    let y = a[(q, j)];
                    a[(p, j)] = x * cs - y * (phase_conj.conj() * sn);
                    a[(q, j)] = x * sn + y * (phase_conj.conj() * cs);
                }
                for i in 0..n {
                    let x = v[(i, p)];
                    let y = v[(i, q)];
                    v[(i, p)] = x * cs - y * (phase_conj * sn);
                    v[(i, q)] = x * sn + y * (phase_conj * cs);
                }
            }
        }
        if off <= SWEEP_EPS * scale {
            break;
        }
    }
    let vals = (0..n).map(|i| a[(i, i)].re).collect();
    (vals, v)
}

/// Eigenvalues of a normal matrix, with eigenvectors. Diagonalizes a random
/// real combination of the Hermitian and anti-Hermitian parts (which commute
/// for normal input) and verifies each Rayleigh quotient as an eigenvalue,
/// retrying with a fresh angle when a coincidence spoils the combination.
pub fn normal_eigenvalues(m: &Matrix<C64>, check_tol: f64) -> Option<(Vec<C64>, Matrix<C64>)> {
    assert!(m.is_square());
    let n = m.rows();
    let h = m.add(&m.adjoint()).scale(&C64::new(0.5, 0.0));
    let k = m.sub(&m.adjoint()).scale(&C64::new(0.0, -0.5));
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    // Deterministic angle sequence; any generic angle works.
    for attempt in 0..8u32 {
        let theta = 0.739_081 + 0.618_034 * f64::from(attempt);
        let comb = h
            .scale(&C64::new(theta.cos(), 0.0))
            .add(&k.scale(&C64::new(theta.sin(), 0.0)));
        let (_, v) = hermitian_eig(&comb);
        let mut vals = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let col = v.col(j);
            let mv = m.mul_vec(&col);
            let mu: C64 = col.iter().zip(&mv).map(|(x, y)| x.conj() * y).sum();
            let resid: f64 = mv
                .iter()
                .zip(&col)
                .map(|(y, x)| (y - mu * x).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if resid > check_tol * scale {
                ok = false;
                break;
            }
            vals.push(mu);
        }
        if ok {
            return Some((vals, v));
        }
    }
    None
}

/// Cluster complex values by the given radius (single-linkage) and return
/// the multiset of cluster sizes, descending.
pub fn cluster_multiplicities(values: &[C64], radius: f64) -> Vec<usize> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut counts = std::collections::HashMap::new();
    for i in 0..n {
        *counts.entry(find(&mut parent, i)).or_insert(0usize) += 1;
    }
    let mut sizes: Vec<usize> = counts.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Eigenvalue multiplicities of a (presumed normal) float matrix, clustering
/// eigenvalues within `cluster_radius`. With `require_normal`, inputs failing
/// the normality test `‖MM* − M*M‖ ≤ 10·tol·‖M‖²` are rejected.
pub fn eigen_multiplicities(
    m: &Matrix<C64>,
    require_normal: bool,
    tol: f64,
    cluster_radius: Option<f64>,
) -> crate::Result<Vec<usize>> {
    assert!(m.is_square());
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(vec![m.rows()]);
    }
    if require_normal {
        let comm = m.mul(&m.adjoint()).sub(&m.adjoint().mul(m));
        if comm.max_abs() > 10.0 * tol * scale * scale {
            return Err(crate::Error::Validation(
                "eigen_multiplicities: input is not normal within tolerance".into(),
            ));
        }
    }
    let radius = cluster_radius.unwrap_or(1e3 * tol * scale);
    let (vals, _) = normal_eigenvalues(m, (1e3 * tol).max(1e-10))
        .ok_or_else(|| crate::Error::Clustering("normal eigensolve did not verify".into()))?;
    Ok(cluster_multiplicities(&vals, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn svd_of_known_matrix() {
        let m = Matrix::from_rows(vec![vec![c(3.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(4.0, 0.0)]]);
        let s = singular_values(&m);
        assert!((s[0] - 4.0).abs() < 1e-12);
        assert!((s[1] - 3.0).abs() < 1e-12);
        assert_eq!(rank_f(&m, 1e-9), 2);
    }

    #[test]
    fn rank_f_zero_and_deficient() {
        let z: Matrix<C64> = Matrix::zeros(3, 3);
        assert_eq!(rank_f(&z, 1e-9), 0);
        let m = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ]);
        assert_eq!(rank_f(&m, 1e-9), 1);
        let k = kernel_f(&m, 1e-9);
        assert_eq!(k.len(), 1);
        let mv = m.mul_vec(&k[0]);
        assert!(mv.iter().map(|z| z.norm()).sum::<f64>() < 1e-10);
    }

    #[test]
    fn hermitian_eig_recovers_spectrum() {
        let m = Matrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ]);
        let (mut vals, v) = hermitian_eig(&m);
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-10);
        assert!((vals[1] - 3.0).abs() < 1e-10);
        // V unitary
        let vv = v.adjoint().mul(&v);
        assert!(vv.sub(&Matrix::identity(2)).max_abs() < 1e-10);
    }

    #[test]
    fn normal_matrix_eigenvalues() {
        // Unitary (hence normal) rotation has eigenvalues e^{±iθ}.
        let th = 0.7f64;
        let m = Matrix::from_rows(vec![
            vec![c(th.cos(), 0.0), c(-th.sin(), 0.0)],
            vec![c(th.sin(), 0.0), c(th.cos(), 0.0)],
        ]);
        let (vals, _) = normal_eigenvalues(&m, 1e-8).unwrap();
        let mut ims: Vec<f64> = vals.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + th.sin()).abs() < 1e-9);
        assert!((ims[1] - th.sin()).abs() < 1e-9);
    }

    #[test]
    fn generic_selfadjoint_spectra_are_simple() {
        // A fixed "random-looking" self-adjoint 4×4; per-sample clustering
        // confirms four distinct eigenvalues.
        let m = Matrix::from_rows(vec![
            vec![c(0.31, 0.0), c(0.42, 0.17), c(-0.58, 0.23), c(0.11, -0.71)],
            vec![c(0.42, -0.17), c(-0.82, 0.0), c(0.33, 0.46), c(0.27, 0.05)],
            vec![c(-0.58, -0.23), c(0.33, -0.46), c(0.54, 0.0), c(-0.19, 0.38)],
            vec![c(0.11, 0.71), c(0.27, -0.05), c(-0.19, -0.38), c(1.07, 0.0)],
        ]);
        let mult = eigen_multiplicities(&m, true, 1e-9, None).unwrap();
        assert_eq!(mult, vec![1, 1, 1, 1]);
    }

    #[test]
    fn multiplicities_examples() {
        let id: Matrix<C64> = Matrix::identity(5);
        assert_eq!(eigen_multiplicities(&id, true, 1e-9, None).unwrap(), vec![5]);
        let d = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        ]);
        let mut mult = eigen_multiplicities(&d, true, 1e-9, None).unwrap();
        mult.sort_unstable();
        assert_eq!(mult, vec![1, 2]);
        // Non-normal input is rejected.
        let nn = Matrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(eigen_multiplicities(&nn, true, 1e-9, None).is_err());
    }
}
