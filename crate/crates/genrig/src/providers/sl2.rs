//! Symmetric-power representations of sl2 on spaces of homogeneous binary
//! forms, with their invariant forms and a Clebsch-Gordan multiplicity
//! recursion used as an independent dimension oracle.

use crate::linalg::InnerProductForm;
use crate::matrix::Matrix;
use crate::scalar::{GRat, Rat};

/// Raising/lowering/weight matrices on the monomial basis
/// `x^{n−k} y^k`, `k = 0..n`.
#[derive(Debug, Clone)]
pub struct Sl2Rep {
    pub n: usize,
    pub e: Matrix<GRat>,
    pub f: Matrix<GRat>,
    pub h: Matrix<GRat>,
}

impl Sl2Rep {
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Exact bracket identities [H,E]=2E, [H,F]=−2F, [E,F]=H.
    pub fn brackets_hold(&self) -> bool {
        let comm = |a: &Matrix<GRat>, b: &Matrix<GRat>| a.mul(b).sub(&b.mul(a));
        comm(&self.h, &self.e) == self.e.scale(&GRat::from_int(2))
            && comm(&self.h, &self.f) == self.f.scale(&GRat::from_int(-2))
            && comm(&self.e, &self.f) == self.h
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut acc: i64 = 1;
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    acc
}

/// The (n+1)-dimensional irreducible with highest weight n, together with
/// the invariant inner product (diagonal with reciprocal binomial weights).
/// With respect to the form, E* = F.
pub fn sl2_sym_power(n: usize) -> (Sl2Rep, InnerProductForm<GRat>) {
    let d = n + 1;
    let mut e: Matrix<GRat> = Matrix::zeros(d, d);
    let mut f: Matrix<GRat> = Matrix::zeros(d, d);
    let mut h: Matrix<GRat> = Matrix::zeros(d, d);
    for k in 0..d {
        h[(k, k)] = GRat::from_int(n as i64 - 2 * k as i64);
        if k > 0 {
            // E: v_k ↦ k v_{k−1}
            e[(k - 1, k)] = GRat::from_int(k as i64);
        }
        if k < n {
            // F: v_k ↦ (n−k) v_{k+1}
            f[(k + 1, k)] = GRat::from_int((n - k) as i64);
        }
    }
    let gram = Matrix::from_fn(d, d, |i, j| {
        if i == j {
            GRat::new(Rat::new(1, binomial(n, i)), Rat::ZERO)
        } else {
            GRat::ZERO
        }
    });
    let rep = Sl2Rep { n, e, f, h };
    debug_assert!(rep.brackets_hold());
    (rep, InnerProductForm::new(gram).expect("binomial gram is positive definite"))
}

/// Multiplicities of each irreducible V_j inside V_n ⊗ V_m-fold tensor
/// powers, by the Clebsch-Gordan rule `V_j ⊗ V_n = ⊕ V_k`,
/// `k = |j−n| .. j+n` in steps of 2. Returns mult[j] for j = 0..=n*m.
pub fn sl2_tensor_multiplicities(n: usize, m: usize) -> Vec<u64> {
    let mut mult = vec![0u64; n * m + 1];
    if m == 0 {
        let mut out = vec![0u64; 1];
        out[0] = 1;
        return out;
    }
    mult[n] = 1;
    for _ in 1..m {
        let mut next = vec![0u64; n * m + 1];
        for (j, &c) in mult.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let lo = j.abs_diff(n);
            let hi = j + n;
            let mut k = lo;
            while k <= hi {
                if k < next.len() {
                    next[k] += c;
                }
                k += 2;
            }
        }
        mult = next;
    }
    mult
}

/// dim End(V_n^{⊗m}) predicted by the recursion: sum of squared
/// multiplicities.
pub fn clebsch_gordan_end_dim(n: usize, m: usize) -> u64 {
    sl2_tensor_multiplicities(n, m).iter().map(|&c| c * c).sum()
}
