//! The shipped acceptance scenarios, runnable as a library (the CLI `suite`
//! subcommand and the acceptance test target both call into here). Each
//! criterion returns a pass/fail result with a human-readable detail line;
//! every randomized piece is seeded.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{self, DensitySampler, FinDimAlgebra};
use crate::grassmann;
use crate::hopf;
use crate::isotropy::{self, RestrictionTarget};
use crate::linalg::{Subspace, kernel};
use crate::matrix::Matrix;
use crate::providers::{
    FiniteGroupProvider, IntertwinerProvider, MatrixRep, Sl2Provider, a4_rotations,
    clebsch_gordan_end_dim, d4_twisted, q8_mixed, s3_permutation, s3_regular,
};
use crate::report::{Stopwatch, trial_rng};
use crate::scalar::{C64, GRat, Scalar};
use crate::tannaka::{self, ConstraintProfile, TannakaOptions};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub float_tolerance: f64,
    pub samples_per_rep: usize,
    pub pair_samples: usize,
    pub density_trials: usize,
    pub single_element_trials: usize,
    pub axb_trials: usize,
    pub psl2_samples: usize,
    pub psl2_orthogonal: usize,
    pub hopf_samples: usize,
    pub probes: usize,
    pub probe_eps: f64,
    /// Hard wall-clock bound (seconds) asserted by the oracle-equivalence
    /// criterion.
    pub runtime_bound_seconds: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20_240_817,
            float_tolerance: 1e-9,
            samples_per_rep: 200,
            pair_samples: 50,
            density_trials: 1000,
            single_element_trials: 500,
            axb_trials: 1000,
            psl2_samples: 200,
            psl2_orthogonal: 20,
            hopf_samples: 100,
            probes: 50,
            probe_eps: 1e-3,
            runtime_bound_seconds: 900.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub wall_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} — {} [{:.1}s]",
            self.index,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details,
            self.wall_seconds
        )
    }
}

/// The five finite-group representations exercised by the suite.
pub fn suite_providers() -> Vec<(&'static str, MatrixRep)> {
    vec![
        ("s3-perm", s3_permutation()),
        ("s3-regular", s3_regular()),
        ("d4-twisted", d4_twisted()),
        ("q8-mixed", q8_mixed()),
        ("a4-rotations", a4_rotations()),
    ]
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

fn involutions(rep: &MatrixRep) -> Vec<usize> {
    rep.group
        .elements()
        .filter(|&g| g != rep.group.id() && rep.group.mul(g, g) == rep.group.id())
        .collect()
}

fn eigenspace(rep: &MatrixRep, g: usize, lambda: i64) -> Subspace<GRat> {
    let n = rep.dim();
    let shifted = rep
        .image(g)
        .sub(&Matrix::identity(n).scale(&GRat::from_int(lambda)));
    let cols = kernel(&shifted);
    Subspace::spanned_by(n, &cols)
}

fn random_subspace_of(
    base: &Subspace<GRat>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Subspace<GRat>> {
    if base.dim() < d || d == 0 {
        return None;
    }
    for _ in 0..16 {
        let coeffs = Matrix::from_fn(base.dim(), d, |_, _| {
            GRat::from_int(rng.random_range(-4i64..=4))
        });
        let cand = base.basis().mul(&coeffs);
        if let Ok(w) = Subspace::new(cand) {
            return Some(w);
        }
    }
    None
}

/// Sample a d-dimensional subspace: random rational, or a structured draw
/// (coordinate subspaces, eigenspace slices of involutions, fixed-space
/// slices) chosen to produce nontrivial isotropy with positive probability.
pub fn sample_for(rep: &MatrixRep, d: usize, rng: &mut ChaCha8Rng, structured: bool) -> Subspace<GRat> {
    let n = rep.dim();
    if structured {
        match rng.random_range(0u32..3) {
            0 => {
                // coordinate subspace
                let mut idx: Vec<usize> = (0..n).collect();
                for i in (1..idx.len()).rev() {
                    let j = rng.random_range(0..=i);
                    idx.swap(i, j);
                }
                let cols: Vec<Vec<GRat>> = idx[..d]
                    .iter()
                    .map(|&i| {
                        let mut v = vec![GRat::ZERO; n];
                        v[i] = GRat::ONE;
                        v
                    })
                    .collect();
                return Subspace::new(Matrix::from_cols(&cols)).expect("coordinate basis");
            }
            1 => {
                let invs = involutions(rep);
                if !invs.is_empty() {
                    let g = invs[rng.random_range(0..invs.len())];
                    let lambda = if rng.random_range(0..2) == 0 { 1 } else { -1 };
                    let e = eigenspace(rep, g, lambda);
                    if let Some(w) = random_subspace_of(&e, d, rng) {
                        return w;
                    }
                }
            }
            _ => {
                let g = rng.random_range(0..rep.group.order());
                let fixed = eigenspace(rep, g, 1);
                if let Some(w) = random_subspace_of(&fixed, d, rng) {
                    return w;
                }
            }
        }
    }
    grassmann::sample_exact(n, d, rng)
}

fn oracle_triple(rep: &MatrixRep, w: &Subspace<GRat>) -> VerdictTriple {
    let iso = isotropy::isotropy_subgroup(rep, w);
    let o0 = isotropy::ell_constrained_of(rep, &iso, 0, RestrictionTarget::W);
    let o1 = isotropy::ell_constrained_of(rep, &iso, 1, RestrictionTarget::W);
    let o2 = isotropy::ell_constrained_of(rep, &iso, 2.min(w.dim()), RestrictionTarget::W);
    (o0, o1, o2)
}

// ---------------------------------------------------------------------------
// Criterion 1: oracle equivalence
// ---------------------------------------------------------------------------

type VerdictTriple = (bool, bool, bool);
type SampleRow = (u64, Subspace<GRat>, VerdictTriple, VerdictTriple, bool);

pub struct OracleEquivalenceOutcome {
    pub result: CriterionResult,
    /// Exactly the (rep index, subspace) samples whose isotropy action on W
    /// was trivial: the probe set for the openness criterion.
    pub good_samples: Vec<(usize, Subspace<GRat>)>,
}

pub fn criterion1_oracle_equivalence(cfg: &SuiteConfig) -> OracleEquivalenceOutcome {
    let clock = Stopwatch::start();
    let providers = suite_providers();
    let mut mismatches: Vec<String> = Vec::new();
    let mut total = 0usize;
    let mut good_samples = Vec::new();
    let mut unstable_count = 0usize;

    for (ri, (name, rep)) in providers.iter().enumerate() {
        let provider = FiniteGroupProvider::new(rep.clone(), *name);
        let n = rep.dim();
        let per_rep: Vec<SampleRow> = (0..cfg.samples_per_rep as u64)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(cfg.seed, ((ri as u64) << 32) | t);
                    let d = 1 + (t as usize % (n - 1));
                    let structured = t % 4 == 3;
                    let w = sample_for(rep, d, &mut rng, structured);
                    let oracle = oracle_triple(rep, &w);
                    let l1 = 1.min(w.dim());
                    let l2 = 2.min(w.dim());
                    let profile = ConstraintProfile {
                        constraints: vec![(0, 0), (0, l1), (0, l2)],
                    };
                    let opts = TannakaOptions {
                        seed: cfg.seed,
                        ..TannakaOptions::default()
                    };
                    let pv = tannaka::check_profile(&provider, std::slice::from_ref(&w), &profile, &opts)
                        .expect("tannaka profile");
                    let tk = (
                        pv.per_target[0].result,
                        pv.per_target[1].result,
                        pv.per_target[2].result,
                    );
                    let unstable = pv.per_target[0].unstable;
                    (t, w, oracle, tk, unstable)
                })
                .collect();
        for (t, w, oracle, tk, unstable) in per_rep {
            total += 1;
            if unstable {
                unstable_count += 1;
            }
            if oracle != tk {
                mismatches.push(format!(
                    "{name} trial {t} d={} oracle={oracle:?} tannaka={tk:?}",
                    w.dim()
                ));
            }
            if oracle.0 {
                good_samples.push((ri, w));
            }
        }
    }
    let wall = clock.seconds();
    let within_time = wall < cfg.runtime_bound_seconds;
    let passed = mismatches.is_empty() && within_time;
    let details = if passed {
        format!(
            "{total} samples across {} reps, 3 thresholds each, 100% agreement ({unstable_count} level-capped)",
            suite_providers().len(),
        )
    } else {
        format!(
            "{} mismatches / {total} samples, {} level-capped, runtime ok = {within_time}; first: {}",
            mismatches.len(),
            unstable_count,
            mismatches.first().cloned().unwrap_or_default()
        )
    };
    OracleEquivalenceOutcome {
        result: CriterionResult {
            index: 1,
            name: "oracle equivalence".into(),
            passed,
            details,
            wall_seconds: wall,
        },
        good_samples,
    }
}

// ---------------------------------------------------------------------------
// Criterion 2: multi-subspace profiles
// ---------------------------------------------------------------------------

pub fn criterion2_profiles(cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let providers = suite_providers();
    let mut mismatches = Vec::new();
    let mut total = 0usize;
    for (ri, (name, rep)) in providers.iter().enumerate() {
        let provider = FiniteGroupProvider::new(rep.clone(), *name);
        let n = rep.dim();
        let rows: Vec<Option<String>> = (0..cfg.pair_samples as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(cfg.seed ^ 0xa11ce, ((ri as u64) << 32) | t);
                let d1 = 1 + (t as usize % (n - 1));
                let d2 = 1 + ((t as usize / 2 + 1) % (n - 1));
                let w1 = sample_for(rep, d1, &mut rng, t % 5 == 4);
                let w2 = sample_for(rep, d2, &mut rng, false);
                let ws = vec![w1.clone(), w2.clone()];
                // Joint-stabilizer oracle.
                let members = isotropy::joint_isotropy(rep, &ws);
                let trivial_on = |w: &Subspace<GRat>| -> bool {
                    members.iter().all(|&g| {
                        isotropy::restriction_matrix(w.basis(), rep.image(g))
                            .map(|r| r.is_identity())
                            .unwrap_or(false)
                    })
                };
                let oracle = (trivial_on(&w1), trivial_on(&w2));
                // Tannaka side: one engine run serves both constraint sets.
                let profile = ConstraintProfile {
                    constraints: vec![(0, 0), (1, 0)],
                };
                let opts = TannakaOptions {
                    seed: cfg.seed,
                    ..TannakaOptions::default()
                };
                let pv = tannaka::check_profile(&provider, &ws, &profile, &opts)
                    .expect("profile check");
                let tk = (pv.per_target[0].result, pv.per_target[1].result);
                if oracle != tk {
                    Some(format!(
                        "{name} pair {t}: oracle {oracle:?} vs tannaka {tk:?}"
                    ))
                } else {
                    None
                }
            })
            .collect();
        for r in rows {
            total += 1;
            if let Some(m) = r {
                mismatches.push(m);
            }
        }
    }
    let passed = mismatches.is_empty();
    CriterionResult {
        index: 2,
        name: "multi-subspace profiles".into(),
        passed,
        details: if passed {
            format!("{total} pairs, single and joint constraint sets, 100% agreement")
        } else {
            format!("{} mismatches: {}", mismatches.len(), mismatches[0])
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 3: generation density
// ---------------------------------------------------------------------------

pub fn criterion3_generation_density(cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let mut failures = Vec::new();

    let m3 = FinDimAlgebra::matrix_blocks(&[3]).expect("M3");
    let gauss = algebra::sample_generation_density(
        &m3,
        2,
        cfg.density_trials,
        DensitySampler::GaussianSelfAdjoint,
        false,
        cfg.seed ^ 0x31,
        cfg.float_tolerance,
    )
    .expect("density");
    if gauss.generating * 1000 < 998 * cfg.density_trials {
        failures.push(format!(
            "M3 gaussian pairs: {}/{} generating",
            gauss.generating, gauss.trials
        ));
    }

    let m21 = FinDimAlgebra::matrix_blocks(&[2, 1]).expect("M2+M1");
    let exact = algebra::sample_generation_density(
        &m21,
        2,
        cfg.density_trials,
        DensitySampler::UniformRational,
        false,
        cfg.seed ^ 0x32,
        cfg.float_tolerance,
    )
    .expect("density");
    if exact.generating != cfg.density_trials {
        failures.push(format!(
            "M2⊕M1 rational pairs: {}/{} generating",
            exact.generating, exact.trials
        ));
    }

    let m2 = FinDimAlgebra::matrix_blocks(&[2]).expect("M2");
    let single = algebra::sample_generation_density(
        &m2,
        1,
        cfg.single_element_trials,
        DensitySampler::UniformRational,
        false,
        cfg.seed ^ 0x33,
        cfg.float_tolerance,
    )
    .expect("density");
    if single.generating != 0 {
        failures.push(format!(
            "M2 single elements: {} unexpectedly generate",
            single.generating
        ));
    }

    let sq = FinDimAlgebra::nilpotent_square_zero(3);
    let sq_pairs = algebra::sample_generation_density(
        &sq,
        2,
        cfg.density_trials,
        DensitySampler::UniformRational,
        false,
        cfg.seed ^ 0x34,
        cfg.float_tolerance,
    )
    .expect("density");
    if sq_pairs.generating != 0 {
        failures.push(format!(
            "square-zero n=3: {} pairs unexpectedly generate",
            sq_pairs.generating
        ));
    }

    let passed = failures.is_empty();
    CriterionResult {
        index: 3,
        name: "generation density".into(),
        passed,
        details: if passed {
            format!(
                "M3 gauss {}/{}, M2⊕M1 exact {}/{}, M2 singles 0/{}, square-zero pairs 0/{}",
                gauss.generating,
                gauss.trials,
                exact.generating,
                exact.trials,
                single.trials,
                sq_pairs.trials
            )
        } else {
            failures.join("; ")
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 4: explicit pair
// ---------------------------------------------------------------------------

pub fn criterion4_explicit_pair(_cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let profiles: Vec<(Vec<usize>, Vec<i64>)> = vec![
        (vec![2], vec![2, 3]),
        (vec![1, 2], vec![2, 3, 7]),
        (vec![2, 3], vec![2, 3, 7, 43, 1806]),
        (vec![1, 1, 2], vec![2, 3, 7, 43]),
    ];
    let mut failures = Vec::new();
    for (blocks, lambdas) in &profiles {
        let l: Vec<GRat> = lambdas.iter().map(|&v| GRat::from_int(v)).collect();
        match algebra::explicit_pair(blocks, &l) {
            Ok((alg, tuple)) => match algebra::is_generating(&alg, &tuple, false) {
                Ok((true, _)) => {}
                Ok((false, _)) => failures.push(format!("{blocks:?}: pair does not generate")),
                Err(e) => failures.push(format!("{blocks:?}: {e}")),
            },
            Err(e) => failures.push(format!("{blocks:?}: constructor rejected valid lambdas: {e}")),
        }
    }
    // The ratio-collision rejection.
    let bad = algebra::explicit_pair(
        &[1, 2],
        &[GRat::from_int(1), GRat::from_int(2), GRat::from_int(4)],
    );
    if bad.is_ok() {
        failures.push("lambda (1,2,4) with colliding ratios was accepted".into());
    }
    let passed = failures.is_empty();
    CriterionResult {
        index: 4,
        name: "explicit generating pair".into(),
        passed,
        details: if passed {
            "4 block profiles generate; ratio collision rejected".into()
        } else {
            failures.join("; ")
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: the ax+b family
// ---------------------------------------------------------------------------

fn axb_float_good(w: &Subspace<C64>, tol: f64) -> bool {
    // A float line [x : y] is the distinguished good point iff its second
    // coordinate vanishes at tolerance scale.
    let b = w.basis();
    let x = b[(0, 0)].norm();
    let y = b[(1, 0)].norm();
    y <= tol * (x + y).max(1e-300)
}

pub fn criterion5_axb(cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let mut failures = Vec::new();
    let scan = grassmann::axb_good_set_scan(cfg.axb_trials, cfg.seed ^ 0x55).expect("axb scan");
    if scan.good_points != vec!["[1:0]".to_string()] {
        failures.push(format!("good set is {:?}", scan.good_points));
    }
    // Openness fails at the distinguished good line: perturbations leave the
    // good set immediately.
    let l0 = Subspace::new_float(
        Matrix::from_rows(vec![vec![C64::new(1.0, 0.0)], vec![C64::new(0.0, 0.0)]]),
        1e-12,
    )
    .expect("l0");
    let tol = cfg.float_tolerance;
    let probe = grassmann::openness_probe(&l0, cfg.probe_eps, cfg.probes, cfg.seed ^ 0x56, |w| {
        axb_float_good(w, tol)
    });
    if probe {
        failures.push("openness probe unexpectedly passed at the isolated good point".into());
    }
    let passed = failures.is_empty();
    CriterionResult {
        index: 5,
        name: "ax+b demonstration".into(),
        passed,
        details: if passed {
            format!(
                "good set over {} scanned lines ∪ distinguished points = {{[1:0]}}; openness probe false at [1:0]",
                scan.trials
            )
        } else {
            failures.join("; ")
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: the symmetric-power line family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Psl2DemoReport {
    pub n: usize,
    pub sampled: usize,
    pub orthogonal_constructed: usize,
    pub good_stratum: String,
    /// Whether the stratum of self-adjoint idempotents (orthogonal pairs)
    /// is the good one; the dichotomy holds either way.
    pub selfadjoint_idempotent_stratum_is_good: bool,
    pub dichotomy_holds: bool,
}

pub fn psl2_demo(n: usize, samples: usize, orthogonal: usize, seed: u64) -> crate::Result<Psl2DemoReport> {
    let mut perp_bits: Vec<bool> = Vec::new();
    let mut nonperp_bits: Vec<bool> = Vec::new();
    let mut sampled = 0;
    for t in 0..samples as u64 {
        let mut rng = trial_rng(seed, t);
        let mut coef = || {
            GRat::new(
                crate::scalar::Rat::new(rng.random_range(-9i64..=9), 1),
                crate::scalar::Rat::new(rng.random_range(-9i64..=9), 1),
            )
        };
        let p = (coef(), coef());
        let q = (coef(), coef());
        let Ok(v) = grassmann::psl2_line_verdict(n, p, q) else {
            continue; // degenerate draw (zero or proportional forms)
        };
        sampled += 1;
        if v.p_perp_q {
            perp_bits.push(v.good);
        } else {
            nonperp_bits.push(v.good);
        }
    }
    for t in 0..orthogonal as u64 {
        let mut rng = trial_rng(seed ^ 0x0e, t);
        let mut coef = || {
            GRat::new(
                crate::scalar::Rat::new(rng.random_range(-9i64..=9), 1),
                crate::scalar::Rat::new(rng.random_range(-9i64..=9), 1),
            )
        };
        let p = (coef(), coef());
        if p.0.is_zero() && p.1.is_zero() {
            continue;
        }
        // q = (−conj(p1), conj(p0)) is Hermitian-orthogonal to p.
        let q = (p.1.conj().neg(), p.0.conj());
        let v = grassmann::psl2_line_verdict(n, p, q)?;
        if !v.p_perp_q {
            return Err(crate::Error::Validation(
                "constructed pair failed the orthogonality test".into(),
            ));
        }
        perp_bits.push(v.good);
    }
    let perp_constant = perp_bits.windows(2).all(|w| w[0] == w[1]);
    let nonperp_constant = nonperp_bits.windows(2).all(|w| w[0] == w[1]);
    let differs = match (perp_bits.first(), nonperp_bits.first()) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    };
    let orth_good = perp_bits.first().copied().unwrap_or(false);
    Ok(Psl2DemoReport {
        n,
        sampled,
        orthogonal_constructed: perp_bits.len(),
        good_stratum: if orth_good {
            "orthogonal (self-adjoint idempotents)".into()
        } else {
            "non-orthogonal".into()
        },
        selfadjoint_idempotent_stratum_is_good: orth_good,
        dichotomy_holds: perp_constant && nonperp_constant && differs,
    })
}

pub fn criterion6_psl2(cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let report = psl2_demo(2, cfg.psl2_samples, cfg.psl2_orthogonal, cfg.seed ^ 0x66);
    let (passed, details) = match report {
        Ok(r) => (
            r.dichotomy_holds,
            format!(
                "{} sampled + {} orthogonal pairs; good stratum: {}; dichotomy holds = {}",
                r.sampled, r.orthogonal_constructed, r.good_stratum, r.dichotomy_holds
            ),
        ),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        index: 6,
        name: "symmetric-power line family".into(),
        passed,
        details,
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 7: empirical openness
// ---------------------------------------------------------------------------

/// Float-mode goodness for a perturbed subspace: enumerate approximate
/// members (those mapping W into itself at tolerance scale) and require
/// each to fix W pointwise.
pub fn float_trivial_good(rep: &MatrixRep, w: &Subspace<C64>, tol: f64) -> bool {
    let b = w.basis();
    let p = w.projector_f();
    let scale = b.max_abs().max(1e-300);
    let member_tol = (1e3 * tol).max(1e-12);
    for g in rep.group.elements() {
        let gf = rep.image(g).to_c64();
        let gb = gf.mul(b);
        let defect = gb.sub(&p.mul(&gb)).max_abs();
        if defect <= member_tol * scale {
            // member: restriction must be the identity
            if gb.sub(b).max_abs() > member_tol * scale {
                return false;
            }
        }
    }
    true
}

pub fn criterion7_openness(cfg: &SuiteConfig, good: &[(usize, Subspace<GRat>)]) -> CriterionResult {
    let clock = Stopwatch::start();
    let providers = suite_providers();
    let tol = cfg.float_tolerance;
    let outcomes: Vec<(bool, bool)> = good
        .par_iter()
        .enumerate()
        .map(|(i, (ri, w))| {
            let rep = &providers[*ri].1;
            let wf = Subspace::new_float(w.basis().to_c64(), 1e-12).expect("float cast");
            let pass1 = grassmann::openness_probe(
                &wf,
                cfg.probe_eps,
                cfg.probes,
                cfg.seed ^ (i as u64),
                |pw| float_trivial_good(rep, pw, tol),
            );
            let pass2 = pass1
                || grassmann::openness_probe(
                    &wf,
                    cfg.probe_eps / 10.0,
                    cfg.probes,
                    cfg.seed ^ (i as u64) ^ 0x77,
                    |pw| float_trivial_good(rep, pw, tol),
                );
            (pass1, pass2)
        })
        .collect();
    let total = outcomes.len();
    let first_pass = outcomes.iter().filter(|(a, _)| *a).count();
    let second_pass = outcomes.iter().filter(|(_, b)| *b).count();
    let ratio_ok = total > 0 && first_pass * 100 >= total * 99;
    let shrink_ok = second_pass == total;
    let passed = ratio_ok && shrink_ok;
    CriterionResult {
        index: 7,
        name: "empirical openness".into(),
        passed,
        details: format!(
            "{first_pass}/{total} good points pass all {} probes at eps={:.0e}; {second_pass}/{total} after shrinking eps",
            cfg.probes, cfg.probe_eps
        ),
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: kernel-ideal locus
// ---------------------------------------------------------------------------

pub fn criterion8_hopf(cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let providers = suite_providers();
    let mut failures = Vec::new();
    let mut total = 0usize;
    for (ri, (name, rep)) in providers.iter().enumerate() {
        let n = rep.dim();
        for t in 0..cfg.hopf_samples as u64 {
            let mut rng = trial_rng(cfg.seed ^ 0x88, ((ri as u64) << 32) | t);
            let d = 1 + (t as usize % (n - 1));
            let w = sample_for(rep, d, &mut rng, t % 4 == 3);
            let gens = hopf::kernel_ideal_generators(rep, &w);
            let locus = hopf::zero_locus(rep, &gens);
            let iso = isotropy::isotropy_subgroup(rep, &w);
            total += 1;
            if locus != iso.member_indices {
                failures.push(format!("{name} trial {t}: locus ≠ isotropy"));
                continue;
            }
            if !rep.group.is_subgroup(&locus) {
                failures.push(format!("{name} trial {t}: locus not a subgroup"));
            }
            if hopf::quotient_dimension(rep, &gens) != iso.order() {
                failures.push(format!("{name} trial {t}: quotient dim ≠ |G_W|"));
            }
        }
    }
    // Coefficient-space dimension predictions.
    let perm_dim = hopf::coefficient_space(&s3_permutation()).len();
    if perm_dim != 5 {
        failures.push(format!("coefficient space of the permutation rep has dim {perm_dim} ≠ 5"));
    }
    let reg_dim = hopf::coefficient_space(&s3_regular()).len();
    if reg_dim != 6 {
        failures.push(format!("coefficient space of the regular rep has dim {reg_dim} ≠ 6"));
    }
    let passed = failures.is_empty();
    CriterionResult {
        index: 8,
        name: "kernel-ideal locus".into(),
        passed,
        details: if passed {
            format!("{total} subspaces: locus = isotropy and quotient dim = |G_W|; coefficient dims 5 and 6")
        } else {
            failures.join("; ")
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: intertwiner dimensions
// ---------------------------------------------------------------------------

pub fn criterion9_intertwiners(_cfg: &SuiteConfig) -> CriterionResult {
    let clock = Stopwatch::start();
    let provider = Sl2Provider::new(1);
    let mut failures = Vec::new();
    let expect = [(2usize, 2u64), (3, 5), (4, 14)];
    for (m, want) in expect {
        let via_commutant = provider.intertwiners(m).map(|b| b.len() as u64);
        let via_recursion = clebsch_gordan_end_dim(1, m);
        match via_commutant {
            Ok(dim) if dim == want && via_recursion == want => {}
            Ok(dim) => failures.push(format!(
                "m={m}: commutant {dim}, recursion {via_recursion}, expected {want}"
            )),
            Err(e) => failures.push(format!("m={m}: {e}")),
        }
    }
    let passed = failures.is_empty();
    CriterionResult {
        index: 9,
        name: "intertwiner dimensions".into(),
        passed,
        details: if passed {
            "dim End(V1^⊗m) = 2, 5, 14 for m = 2, 3, 4 on both routes".into()
        } else {
            failures.join("; ")
        },
        wall_seconds: clock.seconds(),
    }
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    let c1 = criterion1_oracle_equivalence(cfg);
    let mut results = vec![c1.result.clone()];
    results.push(criterion2_profiles(cfg));
    results.push(criterion3_generation_density(cfg));
    results.push(criterion4_explicit_pair(cfg));
    results.push(criterion5_axb(cfg));
    results.push(criterion6_psl2(cfg));
    results.push(criterion7_openness(cfg, &c1.good_samples));
    results.push(criterion8_hopf(cfg));
    results.push(criterion9_intertwiners(cfg));
    results
}

/// Oracle-only regeneration of the good samples (used when the openness
/// criterion runs standalone).
pub fn collect_good_samples(cfg: &SuiteConfig) -> Vec<(usize, Subspace<GRat>)> {
    let providers = suite_providers();
    let mut good = Vec::new();
    for (ri, (_, rep)) in providers.iter().enumerate() {
        let n = rep.dim();
        for t in 0..cfg.samples_per_rep as u64 {
            let mut rng = trial_rng(cfg.seed, ((ri as u64) << 32) | t);
            let d = 1 + (t as usize % (n - 1));
            let w = sample_for(rep, d, &mut rng, t % 4 == 3);
            if isotropy::is_trivial_restriction(rep, &w, RestrictionTarget::W) {
                good.push((ri, w));
            }
        }
    }
    good
}

pub fn run_one(index: usize, cfg: &SuiteConfig) -> crate::Result<CriterionResult> {
    Ok(match index {
        1 => criterion1_oracle_equivalence(cfg).result,
        2 => criterion2_profiles(cfg),
        3 => criterion3_generation_density(cfg),
        4 => criterion4_explicit_pair(cfg),
        5 => criterion5_axb(cfg),
        6 => criterion6_psl2(cfg),
        7 => {
            let good = collect_good_samples(cfg);
            criterion7_openness(cfg, &good)
        }
        8 => criterion8_hopf(cfg),
        9 => criterion9_intertwiners(cfg),
        other => {
            return Err(crate::Error::Validation(format!(
                "no criterion {other}; valid range is 1..=9"
            )));
        }
    })
}
