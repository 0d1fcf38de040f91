//! Command implementations: each experiment produces per-sample CSV rows
//! (deterministic under the seed) and a JSON summary.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use genrig::Result;
use genrig::algebra::{self, DensitySampler};
use genrig::grassmann;
use genrig::io::{AlgebraSpec, LoadedProvider, Scenario, ScenarioKind, load_provider, read_subspaces_file};
use genrig::isotropy::{self, RestrictionTarget};
use genrig::linalg::Subspace;
use genrig::providers::MatrixRep;
use genrig::report::{ExperimentReport, Stopwatch, tool_version, trial_rng};
use genrig::scalar::GRat;
use genrig::suite::{self, SuiteConfig, sample_for};
use genrig::tannaka::{self, ConstraintProfile, TannakaOptions};

const GROUP_CAP: usize = 512;

fn write_report(
    out: &Path,
    kind: &str,
    header: &[&str],
    rows: &[Vec<String>],
    summary: serde_json::Value,
) -> Result<()> {
    std::fs::create_dir_all(out)?;
    let seed = summary.get("seed").and_then(|v| v.as_u64()).unwrap_or(0);
    let wall = summary
        .get("wall_seconds")
        .and_then(|v| v.as_f64())
        .unwrap_or(0.0);
    let report = ExperimentReport {
        kind: kind.to_string(),
        master_seed: seed,
        tool_version: tool_version(),
        wall_seconds: wall,
        summary,
        csv_header: header.iter().map(|s| s.to_string()).collect(),
        csv_rows: rows.to_vec(),
    };
    let csv_path = out.join(format!("{kind}.csv"));
    let json_path = out.join(format!("{kind}.json"));
    report.write_csv(&csv_path)?;
    report.write_json(&json_path)?;
    println!("{}", serde_json::to_string_pretty(&report.summary)?);
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn parse_target(on: &str) -> Result<RestrictionTarget> {
    match on {
        "w" | "W" => Ok(RestrictionTarget::W),
        "v" | "V" => Ok(RestrictionTarget::V),
        other => Err(genrig::Error::Validation(format!(
            "--on must be w or v, got {other:?}"
        ))),
    }
}

fn parse_algebra_spec(spec: &str) -> Result<AlgebraSpec> {
    if let Some(rest) = spec.strip_prefix("blocks:") {
        let sizes: std::result::Result<Vec<usize>, _> =
            rest.split(',').map(|s| s.trim().parse()).collect();
        return Ok(AlgebraSpec::Blocks(sizes.map_err(|_| {
            genrig::Error::Parse(format!("bad block sizes in {spec:?}"))
        })?));
    }
    if let Some(rest) = spec.strip_prefix("square-zero:") {
        let n = rest
            .parse()
            .map_err(|_| genrig::Error::Parse(format!("bad square-zero size in {spec:?}")))?;
        return Ok(AlgebraSpec::SquareZero(n));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(AlgebraSpec::File(path.to_string()));
    }
    Err(genrig::Error::Validation(format!(
        "unknown algebra spec {spec:?} (expected blocks:…, square-zero:…, file:…)"
    )))
}

fn finite_rep<'p>(provider: &'p LoadedProvider, what: &str) -> Result<&'p MatrixRep> {
    provider.finite_rep().ok_or_else(|| {
        genrig::Error::Validation(format!("{what} needs a finite-group provider"))
    })
}

pub fn gen_density(
    algebra: &str,
    tuple_size: usize,
    trials: usize,
    seed: u64,
    mode: &str,
    out: &Path,
) -> Result<()> {
    let alg = parse_algebra_spec(algebra)?.load()?;
    let sampler = match mode {
        "exact" => DensitySampler::UniformRational,
        "float" => DensitySampler::GaussianSelfAdjoint,
        other => {
            return Err(genrig::Error::Validation(format!(
                "--mode must be exact or float, got {other:?}"
            )));
        }
    };
    let clock = Stopwatch::start();
    let outcome =
        algebra::sample_generation_density(&alg, tuple_size, trials, sampler, false, seed, 1e-9)?;
    let failed: std::collections::HashSet<u64> =
        outcome.non_generating_trials.iter().copied().collect();
    let rows: Vec<Vec<String>> = (0..trials as u64)
        .map(|t| vec![t.to_string(), (!failed.contains(&t)).to_string()])
        .collect();
    write_report(
        out,
        "gen-density",
        &["trial", "generating"],
        &rows,
        serde_json::json!({
            "kind": "gen-density",
            "tool": tool_version(),
            "algebra": algebra,
            "tuple_size": tuple_size,
            "sampler": mode,
            "seed": seed,
            "trials": outcome.trials,
            "generating": outcome.generating,
            "fraction": outcome.fraction(),
            "non_generating_trials": outcome.non_generating_trials,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn isotropy_scan(
    provider_spec: &str,
    d: usize,
    trials: usize,
    ell: usize,
    on: &str,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let rep = finite_rep(&provider, "isotropy-scan")?;
    let target = parse_target(on)?;
    let clock = Stopwatch::start();
    let mut rows = Vec::new();
    let mut good = 0usize;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let w = sample_for(rep, d, &mut rng, t % 4 == 3);
        let iso = isotropy::isotropy_subgroup(rep, &w);
        let verdict = isotropy::ell_constrained_of(rep, &iso, ell.min(w.dim()), target);
        if verdict {
            good += 1;
        }
        rows.push(vec![
            t.to_string(),
            w.dim().to_string(),
            iso.order().to_string(),
            verdict.to_string(),
        ]);
    }
    write_report(
        out,
        "isotropy-scan",
        &["trial", "d", "isotropy_order", "verdict"],
        &rows,
        serde_json::json!({
            "kind": "isotropy-scan",
            "tool": tool_version(),
            "provider": provider_spec,
            "d": d, "ell": ell, "on": on, "seed": seed,
            "trials": trials,
            "good": good,
            "fraction": good as f64 / trials.max(1) as f64,
            "wall_seconds": clock.seconds(),
        }),
    )
}

fn parse_profile(profile: &str) -> Result<ConstraintProfile> {
    let mut constraints = Vec::new();
    for part in profile.split(',') {
        let (j, l) = part
            .split_once(':')
            .ok_or_else(|| genrig::Error::Parse(format!("bad profile entry {part:?}")))?;
        constraints.push((
            j.trim()
                .parse()
                .map_err(|_| genrig::Error::Parse(format!("bad index in {part:?}")))?,
            l.trim()
                .parse()
                .map_err(|_| genrig::Error::Parse(format!("bad threshold in {part:?}")))?,
        ));
    }
    Ok(ConstraintProfile { constraints })
}

pub fn tannaka_check(
    provider_spec: &str,
    subspace_file: &Path,
    profile: &str,
    nmax: Option<usize>,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let ws = read_subspaces_file(subspace_file)?;
    let profile = parse_profile(profile)?;
    let opts = TannakaOptions {
        n_max: nmax,
        seed,
        crosscheck_samples: 4,
        ..TannakaOptions::default()
    };
    let clock = Stopwatch::start();
    let verdicts = tannaka::check_profile(provider.as_intertwiner(), &ws, &profile, &opts)?;
    let rows: Vec<Vec<String>> = verdicts
        .per_target
        .iter()
        .map(|v| {
            vec![
                v.target.to_string(),
                v.ell.to_string(),
                v.result.to_string(),
                v.stabilized_at.map_or("none".into(), |n| n.to_string()),
                v.unstable.to_string(),
                format!("{:?}", v.compressed_dims).replace(',', ";"),
            ]
        })
        .collect();
    write_report(
        out,
        "tannaka-check",
        &["target", "ell", "result", "stabilized_at", "unstable", "compressed_dims"],
        &rows,
        serde_json::json!({
            "kind": "tannaka-check",
            "tool": tool_version(),
            "provider": provider_spec,
            "profile": profile,
            "result": verdicts.result,
            "per_target": verdicts.per_target,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn oracle_compare(
    provider_spec: &str,
    d: usize,
    trials: usize,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let rep = finite_rep(&provider, "oracle-compare")?;
    let clock = Stopwatch::start();
    let mut rows = Vec::new();
    let mut agreements = 0usize;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let w = sample_for(rep, d, &mut rng, t % 4 == 3);
        let iso = isotropy::isotropy_subgroup(rep, &w);
        let l1 = 1.min(w.dim());
        let l2 = 2.min(w.dim());
        let oracle = (
            isotropy::ell_constrained_of(rep, &iso, 0, RestrictionTarget::W),
            isotropy::ell_constrained_of(rep, &iso, l1, RestrictionTarget::W),
            isotropy::ell_constrained_of(rep, &iso, l2, RestrictionTarget::W),
        );
        let profile = ConstraintProfile {
            constraints: vec![(0, 0), (0, l1), (0, l2)],
        };
        let opts = TannakaOptions {
            seed,
            ..TannakaOptions::default()
        };
        let pv = tannaka::check_profile(provider.as_intertwiner(), std::slice::from_ref(&w), &profile, &opts)?;
        let tk = (
            pv.per_target[0].result,
            pv.per_target[1].result,
            pv.per_target[2].result,
        );
        let agree = oracle == tk;
        if agree {
            agreements += 1;
        }
        rows.push(vec![
            t.to_string(),
            w.dim().to_string(),
            format!("{}|{}|{}", oracle.0, oracle.1, oracle.2),
            format!("{}|{}|{}", tk.0, tk.1, tk.2),
            agree.to_string(),
        ]);
    }
    write_report(
        out,
        "oracle-compare",
        &["trial", "d", "oracle(l0|l1|l2)", "tannaka(l0|l1|l2)", "agree"],
        &rows,
        serde_json::json!({
            "kind": "oracle-compare",
            "tool": tool_version(),
            "provider": provider_spec,
            "d": d, "seed": seed,
            "trials": trials,
            "agreements": agreements,
            "agreement_fraction": agreements as f64 / trials.max(1) as f64,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn scan(
    provider_spec: &str,
    d: usize,
    trials: usize,
    ell: usize,
    on: &str,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let rep = finite_rep(&provider, "scan")?;
    let target = parse_target(on)?;
    let clock = Stopwatch::start();
    let mut rows = Vec::new();
    let mut good = 0usize;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let w = grassmann::sample_exact(rep.dim(), d, &mut rng);
        let ok = isotropy::ell_constrained(rep, &w, ell.min(w.dim()), target);
        if ok {
            good += 1;
        }
        rows.push(vec![t.to_string(), ok.to_string()]);
    }
    write_report(
        out,
        "scan",
        &["trial", "good"],
        &rows,
        serde_json::json!({
            "kind": "scan",
            "tool": tool_version(),
            "provider": provider_spec,
            "d": d, "ell": ell, "on": on, "seed": seed,
            "trials": trials,
            "good": good,
            "fraction": good as f64 / trials.max(1) as f64,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn probe(
    provider_spec: &str,
    d: usize,
    trials: usize,
    eps: f64,
    probes: usize,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let rep = finite_rep(&provider, "probe")?;
    let clock = Stopwatch::start();
    let mut rows = Vec::new();
    let mut passed = 0usize;
    let mut probed = 0usize;
    let mut t = 0u64;
    // Probe `trials` oracle-good base points, skipping bad samples.
    while probed < trials && t < (trials as u64) * 50 {
        let mut rng = trial_rng(seed, t);
        let w = sample_for(rep, d, &mut rng, t % 4 == 3);
        t += 1;
        if !isotropy::is_trivial_restriction(rep, &w, RestrictionTarget::W) {
            continue;
        }
        probed += 1;
        let wf = Subspace::new_float(w.basis().to_c64(), 1e-12)
            .map_err(|e| genrig::Error::Validation(format!("float cast: {e}")))?;
        let ok = grassmann::openness_probe(&wf, eps, probes, seed ^ t, |pw| {
            suite::float_trivial_good(rep, pw, 1e-9)
        });
        if ok {
            passed += 1;
        }
        rows.push(vec![(t - 1).to_string(), ok.to_string()]);
    }
    write_report(
        out,
        "probe",
        &["base_trial", "all_probes_good"],
        &rows,
        serde_json::json!({
            "kind": "openness-probe",
            "tool": tool_version(),
            "provider": provider_spec,
            "d": d, "eps": eps, "probes": probes, "seed": seed,
            "probed_points": probed,
            "passed": passed,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn axb_demo(trials: usize, seed: u64, out: &Path) -> Result<()> {
    let report = grassmann::axb_good_set_scan(trials, seed)?;
    let rows: Vec<Vec<String>> = report
        .distinguished
        .iter()
        .map(|(p, good)| vec![p.clone(), good.to_string()])
        .collect();
    write_report(
        out,
        "axb-demo",
        &["point", "good"],
        &rows,
        serde_json::json!({
            "kind": "axb-demo",
            "tool": tool_version(),
            "seed": seed,
            "trials": report.trials,
            "good_set": report.good_points,
            "random_good": report.scanned_random_good,
            "wall_seconds": report.wall_seconds,
        }),
    )
}

pub fn psl2_demo(n: usize, trials: usize, orthogonal: usize, seed: u64, out: &Path) -> Result<()> {
    let clock = Stopwatch::start();
    let report = suite::psl2_demo(n, trials, orthogonal, seed)?;
    write_report(
        out,
        "psl2-demo",
        &["stratum", "good"],
        &[
            vec!["orthogonal".into(), report.selfadjoint_idempotent_stratum_is_good.to_string()],
            vec![
                "non-orthogonal".into(),
                (!report.selfadjoint_idempotent_stratum_is_good && report.dichotomy_holds)
                    .to_string(),
            ],
        ],
        serde_json::json!({
            "kind": "psl2-demo",
            "tool": tool_version(),
            "seed": seed,
            "report": report,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn hopf_kernel(
    provider_spec: &str,
    subspace_file: Option<&Path>,
    trials: Option<usize>,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let provider = load_provider(provider_spec, GROUP_CAP)?;
    let rep = finite_rep(&provider, "hopf-kernel")?;
    let ws: Vec<Subspace<GRat>> = match (subspace_file, trials) {
        (Some(path), _) => read_subspaces_file(path)?,
        (None, Some(tr)) => (0..tr as u64)
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let d = 1 + (t as usize % (rep.dim() - 1));
                sample_for(rep, d, &mut rng, t % 4 == 3)
            })
            .collect(),
        (None, None) => {
            return Err(genrig::Error::Validation(
                "hopf-kernel needs --subspace-file or --trials".into(),
            ));
        }
    };
    let clock = Stopwatch::start();
    let mut rows = Vec::new();
    let mut all_agree = true;
    for (i, w) in ws.iter().enumerate() {
        let gens = genrig::hopf::kernel_ideal_generators(rep, w);
        let locus = genrig::hopf::zero_locus(rep, &gens);
        let qdim = genrig::hopf::quotient_dimension(rep, &gens);
        let iso = isotropy::isotropy_subgroup(rep, w);
        let agree = locus == iso.member_indices && qdim == iso.order();
        all_agree &= agree;
        rows.push(vec![
            i.to_string(),
            w.dim().to_string(),
            locus.len().to_string(),
            iso.order().to_string(),
            qdim.to_string(),
            agree.to_string(),
        ]);
    }
    write_report(
        out,
        "hopf-kernel",
        &["subspace", "d", "locus_size", "isotropy_order", "quotient_dim", "agree"],
        &rows,
        serde_json::json!({
            "kind": "hopf-kernel",
            "tool": tool_version(),
            "provider": provider_spec,
            "seed": seed,
            "subspaces": ws.len(),
            "all_agree": all_agree,
            "wall_seconds": clock.seconds(),
        }),
    )
}

pub fn run_scenario(path: &Path, out: &Path) -> Result<()> {
    let scenario = Scenario::from_file(path)?;
    match scenario.kind {
        ScenarioKind::GenDensity => {
            let alg = scenario.algebra.clone().expect("validated");
            let spec = match &alg {
                AlgebraSpec::Blocks(b) => format!(
                    "blocks:{}",
                    b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                ),
                AlgebraSpec::SquareZero(n) => format!("square-zero:{n}"),
                AlgebraSpec::File(f) => format!("file:{f}"),
            };
            let mode = match scenario.sampler.expect("validated") {
                DensitySampler::UniformRational => "exact",
                DensitySampler::GaussianSelfAdjoint => "float",
            };
            gen_density(
                &spec,
                scenario.tuple_size.expect("validated"),
                scenario.trials.expect("validated"),
                scenario.seed,
                mode,
                out,
            )
        }
        ScenarioKind::IsotropyScan => isotropy_scan(
            scenario.provider.as_deref().expect("validated"),
            scenario.d.expect("validated"),
            scenario.trials.expect("validated"),
            scenario.ell.unwrap_or(0),
            match scenario.on.unwrap_or(RestrictionTarget::W) {
                RestrictionTarget::W => "w",
                RestrictionTarget::V => "v",
            },
            scenario.seed,
            out,
        ),
        ScenarioKind::TannakaCheck => {
            let profile = scenario
                .profile
                .clone()
                .unwrap_or_else(|| vec![(0, 0)])
                .iter()
                .map(|(j, l)| format!("{j}:{l}"))
                .collect::<Vec<_>>()
                .join(",");
            tannaka_check(
                scenario.provider.as_deref().expect("validated"),
                Path::new(scenario.subspace_file.as_deref().expect("validated")),
                &profile,
                scenario.n_max,
                scenario.seed,
                out,
            )
        }
        ScenarioKind::OracleCompare => oracle_compare(
            scenario.provider.as_deref().expect("validated"),
            scenario.d.expect("validated"),
            scenario.trials.expect("validated"),
            scenario.seed,
            out,
        ),
        ScenarioKind::OpennessProbe => probe(
            scenario.provider.as_deref().expect("validated"),
            scenario.d.expect("validated"),
            scenario.trials.expect("validated"),
            scenario.eps.unwrap_or(1e-3),
            scenario.probes.expect("validated"),
            scenario.seed,
            out,
        ),
        ScenarioKind::AxbDemo => axb_demo(scenario.trials.expect("validated"), scenario.seed, out),
        ScenarioKind::Psl2Demo => psl2_demo(
            scenario.psl2_n.expect("validated"),
            scenario.trials.expect("validated"),
            scenario.trials.expect("validated") / 10 + 5,
            scenario.seed,
            out,
        ),
        ScenarioKind::HopfKernel => hopf_kernel(
            scenario.provider.as_deref().expect("validated"),
            scenario.subspace_file.as_deref().map(Path::new),
            scenario.trials,
            scenario.seed,
            out,
        ),
    }
}

pub fn run_suite(
    tolerance: Option<f64>,
    quick: bool,
    only: Option<usize>,
    out: &Path,
) -> ExitCode {
    let mut cfg = SuiteConfig::default();
    if let Some(t) = tolerance {
        cfg.float_tolerance = t;
    }
    if quick {
        cfg.samples_per_rep = 20;
        cfg.pair_samples = 6;
        cfg.density_trials = 100;
        cfg.single_element_trials = 50;
        cfg.axb_trials = 200;
        cfg.psl2_samples = 50;
        cfg.psl2_orthogonal = 8;
        cfg.hopf_samples = 20;
        cfg.probes = 15;
    }
    let results = match only {
        Some(k) => match suite::run_one(k, &cfg) {
            Ok(r) => vec![r],
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => suite::run_all(&cfg),
    };
    let mut all = true;
    let mut rows = Vec::new();
    for r in &results {
        println!("{}", r.line());
        all &= r.passed;
        rows.push(vec![
            r.index.to_string(),
            r.name.clone(),
            r.passed.to_string(),
            r.details.clone(),
        ]);
    }
    // Deterministic table (no wall-clock columns) for idempotence checks.
    let _ = write_suite_table(out, &rows);
    if all {
        println!("suite: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("suite: FAILURES present");
        ExitCode::FAILURE
    }
}

fn write_suite_table(out: &Path, rows: &[Vec<String>]) -> Result<PathBuf> {
    std::fs::create_dir_all(out)?;
    let path = out.join("suite.csv");
    let mut text = String::from("criterion,name,passed,details\n");
    for row in rows {
        let quoted: Vec<String> = row
            .iter()
            .map(|f| {
                if f.contains(',') {
                    format!("\"{}\"", f.replace('"', "'"))
                } else {
                    f.clone()
                }
            })
            .collect();
        text.push_str(&quoted.join(","));
        text.push('\n');
    }
    std::fs::write(&path, text)?;
    Ok(path)
}
