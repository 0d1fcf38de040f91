//! Linear-algebraic isotropy analysis for subspaces under group actions.
//!
//! The crate decides, for a subspace `W` of a representation `V`, whether the
//! isotropy group of `W` acts trivially (or with dimensionally constrained
//! irreducible pieces) on `W` or on `V`. Two independent routes are provided:
//! a direct enumeration oracle for finite groups, and an intertwiner-algebra
//! checker that only consumes representation-categorical data (commutants of
//! tensor powers and subspace projections). A Monte Carlo lab estimates how
//! generic the "good" subspaces are and probes openness empirically, and a
//! function-algebra module realizes the same isotropy groups as zero loci of
//! coefficient ideals.
//!
//! Everything that feeds a verdict runs in exact rational or Gaussian-rational
//! arithmetic; floating point appears only in sampling, spectral diagnostics,
//! and explicitly float-mode experiments.

pub mod algebra;
pub mod grassmann;
pub mod hopf;
pub mod io;
pub mod isotropy;
pub mod linalg;
pub mod matrix;
pub mod providers;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tannaka;
pub mod wedderburn;

pub use matrix::Matrix;
pub use scalar::{C64, GRat, Rat, Scalar, ScalarMode};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("spectral clustering failed; decrease tolerance ({0})")]
    Clustering(String),
    #[error("group not finite within cap ({0})")]
    GroupCap(String),
    #[error("invalid generator data: {0}")]
    Generator(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
