//! Experiment runner: scenario files, per-module shortcuts, and the shipped
//! acceptance suite. Reports are written as CSV (per-sample records,
//! bit-reproducible in exact mode) plus a JSON summary.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "genrig", version, about = "isotropy genericity experiments")]
struct Cli {
    /// Output directory for CSV/JSON reports.
    #[arg(long, global = true, default_value = "genrig-out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file.
    Run { scenario: PathBuf },
    /// Run every shipped acceptance scenario and print a table.
    Suite {
        /// Override the float tolerance (fault-injection knob).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Reduced sample counts for a quick smoke pass.
        #[arg(long)]
        quick: bool,
        /// Run a single criterion (1..=9) instead of all.
        #[arg(long)]
        only: Option<usize>,
    },
    /// Monte Carlo density of generating tuples in a finite-dimensional
    /// algebra.
    GenDensity {
        /// Algebra: "blocks:2,3", "square-zero:3", or "file:PATH".
        #[arg(long)]
        algebra: String,
        /// Tuple size.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// exact (uniform rational) or float (gaussian self-adjoint).
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Sample subspaces and report isotropy constraint verdicts from the
    /// enumeration oracle.
    IsotropyScan {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        /// w or v.
        #[arg(long, default_value = "w")]
        on: String,
        #[arg(long)]
        seed: u64,
    },
    /// Intertwiner-side constraint check for subspaces from a file.
    TannakaCheck {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        subspace_file: PathBuf,
        /// Constraint profile "index:ell,index:ell" (default "0:0").
        #[arg(long, default_value = "0:0")]
        profile: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Per-sample agreement table between the checker and the oracle.
    OracleCompare {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Genericity scan: fraction of sampled subspaces passing a constraint.
    Scan {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long, default_value = "w")]
        on: String,
        #[arg(long)]
        seed: u64,
    },
    /// Local openness probes around oracle-good sampled subspaces.
    Probe {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        d: usize,
        /// Number of good base points to probe.
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 50)]
        probes: usize,
        #[arg(long)]
        seed: u64,
    },
    /// The upper-triangular line family: good-set scan plus the openness
    /// failure at the isolated good point.
    AxbDemo {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// The symmetric-power line family: stratum dichotomy report.
    Psl2Demo {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        orthogonal: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Kernel-ideal zero loci versus enumerated isotropy subgroups.
    HopfKernel {
        #[arg(long)]
        provider: String,
        #[arg(long)]
        subspace_file: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn exit_code_for(err: &genrig::Error) -> u8 {
    match err {
        genrig::Error::Validation(_)
        | genrig::Error::Parse(_)
        | genrig::Error::Mode(_)
        | genrig::Error::Dim(_)
        | genrig::Error::Generator(_)
        | genrig::Error::Json(_) => 2,
        genrig::Error::Budget(_) | genrig::Error::GroupCap(_) | genrig::Error::Clustering(_) => 3,
        genrig::Error::Io(_) | genrig::Error::DegenerateForm(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Run { scenario } => commands::run_scenario(&scenario, &out),
        Command::Suite { tolerance, quick, only } => {
            return commands::run_suite(tolerance, quick, only, &out);
        }
        Command::GenDensity { algebra, n, trials, seed, mode } => {
            commands::gen_density(&algebra, n, trials, seed, &mode, &out)
        }
        Command::IsotropyScan { provider, d, trials, ell, on, seed } => {
            commands::isotropy_scan(&provider, d, trials, ell, &on, seed, &out)
        }
        Command::TannakaCheck { provider, subspace_file, profile, nmax, seed } => {
            commands::tannaka_check(&provider, &subspace_file, &profile, nmax, seed.unwrap_or(0), &out)
        }
        Command::OracleCompare { provider, d, trials, seed } => {
            commands::oracle_compare(&provider, d, trials, seed, &out)
        }
        Command::Scan { provider, d, trials, ell, on, seed } => {
            commands::scan(&provider, d, trials, ell, &on, seed, &out)
        }
        Command::Probe { provider, d, trials, eps, probes, seed } => {
            commands::probe(&provider, d, trials, eps, probes, seed, &out)
        }
        Command::AxbDemo { trials, seed } => commands::axb_demo(trials, seed, &out),
        Command::Psl2Demo { n, trials, orthogonal, seed } => {
            commands::psl2_demo(n, trials, orthogonal, seed, &out)
        }
        Command::HopfKernel { provider, subspace_file, trials, seed } => {
            commands::hopf_kernel(&provider, subspace_file.as_deref(), trials, seed, &out)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
