//! File formats: matrices with a per-file scalar-mode header, group and
//! subspace inputs, provider specifications, and scenario files for the
//! experiment runner.
//!
//! Matrices serialize as arrays of rows. Exact scalars are strings
//! ("p/q" or "p/q+r/s i"); float scalars are `[re, im]` pairs. The mode in
//! the header governs parsing, and entries outside the declared mode (an
//! imaginary part in a rational file, say) are rejected rather than coerced.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Value, json};

use crate::algebra::{DensitySampler, FinDimAlgebra};
use crate::isotropy::RestrictionTarget;
use crate::linalg::Subspace;
use crate::matrix::Matrix;
use crate::providers::{
    FiniteGroup, FiniteGroupProvider, IntertwinerProvider, MatrixRep, Sl2Provider, group_closure,
    regular_rep,
};
use crate::scalar::{C64, GRat, ScalarMode};

/// A matrix tagged with the scalar mode it was declared under.
#[derive(Debug, Clone)]
pub enum DynMatrix {
    Exact(ScalarMode, Matrix<GRat>),
    Float(f64, Matrix<C64>),
}

fn exact_entry_to_json(mode: ScalarMode, z: &GRat) -> crate::Result<Value> {
    if mode == ScalarMode::ExactRational && !z.is_real() {
        return Err(crate::Error::Mode(
            "imaginary entry in exact-rational output".into(),
        ));
    }
    Ok(Value::String(z.to_string()))
}

pub fn matrix_to_json(m: &DynMatrix) -> crate::Result<Value> {
    match m {
        DynMatrix::Exact(mode, mat) => {
            let mut rows = Vec::new();
            for r in 0..mat.rows() {
                let row: crate::Result<Vec<Value>> = mat
                    .row(r)
                    .iter()
                    .map(|z| exact_entry_to_json(*mode, z))
                    .collect();
                rows.push(Value::Array(row?));
            }
            Ok(json!({ "mode": mode, "rows": rows }))
        }
        DynMatrix::Float(tol, mat) => {
            let rows: Vec<Value> = (0..mat.rows())
                .map(|r| {
                    Value::Array(
                        mat.row(r)
                            .iter()
                            .map(|z| json!([z.re, z.im]))
                            .collect(),
                    )
                })
                .collect();
            Ok(json!({ "mode": ScalarMode::FloatComplex { tolerance: *tol }, "rows": rows }))
        }
    }
}

fn parse_exact_entry(mode: ScalarMode, v: &Value) -> crate::Result<GRat> {
    let s = v
        .as_str()
        .ok_or_else(|| crate::Error::Parse(format!("expected string scalar, got {v}")))?;
    let z: GRat = s.parse()?;
    if mode == ScalarMode::ExactRational && !z.is_real() {
        return Err(crate::Error::Mode(format!(
            "entry {s:?} has an imaginary part but the file is exact-rational"
        )));
    }
    Ok(z)
}

pub fn matrix_from_json(v: &Value) -> crate::Result<DynMatrix> {
    let mode: ScalarMode = serde_json::from_value(
        v.get("mode")
            .cloned()
            .ok_or_else(|| crate::Error::Parse("matrix file needs a mode header".into()))?,
    )?;
    mode.validate()?;
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| crate::Error::Parse("matrix file needs rows".into()))?;
    match mode {
        ScalarMode::FloatComplex { tolerance } => {
            let mut out = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| crate::Error::Parse("row is not an array".into()))?;
                let mut orow = Vec::new();
                for e in row {
                    let pair = e
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| crate::Error::Parse("float entry must be [re, im]".into()))?;
                    orow.push(C64::new(
                        pair[0].as_f64().unwrap_or(f64::NAN),
                        pair[1].as_f64().unwrap_or(f64::NAN),
                    ));
                }
                out.push(orow);
            }
            Ok(DynMatrix::Float(tolerance, Matrix::from_rows(out)))
        }
        exact => {
            let mut out = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| crate::Error::Parse("row is not an array".into()))?;
                let orow: crate::Result<Vec<GRat>> =
                    row.iter().map(|e| parse_exact_entry(exact, e)).collect();
                out.push(orow?);
            }
            Ok(DynMatrix::Exact(exact, Matrix::from_rows(out)))
        }
    }
}

// ---------------------------------------------------------------------------
// Group and subspace files
// ---------------------------------------------------------------------------

/// Group file: either exact matrix generators (closed by enumeration) or an
/// explicit multiplication table with one representation image per element.
pub fn read_group_json(v: &Value, cap: usize) -> crate::Result<MatrixRep> {
    if let Some(gens) = v.get("matrix_generators").and_then(Value::as_array) {
        let mats: crate::Result<Vec<Matrix<GRat>>> = gens
            .iter()
            .map(|g| match matrix_from_json(g)? {
                DynMatrix::Exact(_, m) => Ok(m),
                DynMatrix::Float(..) => Err(crate::Error::Mode(
                    "group generators must be exact".into(),
                )),
            })
            .collect();
        let (_, rep) = group_closure(&mats?, cap)?;
        return Ok(rep);
    }
    if let (Some(table), Some(images)) = (v.get("multiplication_table"), v.get("representation")) {
        let table: Vec<Vec<u32>> = serde_json::from_value(table.clone())?;
        let group = Arc::new(FiniteGroup::from_mul_table(table)?);
        let images: crate::Result<Vec<Matrix<GRat>>> = images
            .as_array()
            .ok_or_else(|| crate::Error::Parse("representation must be an array".into()))?
            .iter()
            .map(|g| match matrix_from_json(g)? {
                DynMatrix::Exact(_, m) => Ok(m),
                DynMatrix::Float(..) => Err(crate::Error::Mode("images must be exact".into())),
            })
            .collect();
        let gens: Vec<usize> = group.elements().collect();
        return MatrixRep::new(group, images?, gens);
    }
    Err(crate::Error::Parse(
        "group file needs matrix_generators or multiplication_table + representation".into(),
    ))
}

pub fn read_group_file(path: &Path, cap: usize) -> crate::Result<MatrixRep> {
    let v: Value = serde_json::from_reader(std::fs::File::open(path)?)?;
    read_group_json(&v, cap)
}

/// Subspace file: a list of basis matrices (columns span each subspace).
pub fn read_subspaces_json(v: &Value) -> crate::Result<Vec<Subspace<GRat>>> {
    let list = v
        .get("subspaces")
        .and_then(Value::as_array)
        .ok_or_else(|| crate::Error::Parse("subspace file needs a subspaces array".into()))?;
    list.iter()
        .map(|s| {
            let basis = s
                .get("basis")
                .ok_or_else(|| crate::Error::Parse("subspace needs a basis matrix".into()))?;
            match matrix_from_json(basis)? {
                DynMatrix::Exact(_, m) => Subspace::new(m),
                DynMatrix::Float(..) => {
                    Err(crate::Error::Mode("subspace basis must be exact".into()))
                }
            }
        })
        .collect()
}

pub fn read_subspaces_file(path: &Path) -> crate::Result<Vec<Subspace<GRat>>> {
    let v: Value = serde_json::from_reader(std::fs::File::open(path)?)?;
    read_subspaces_json(&v)
}

pub fn subspaces_to_json(ws: &[Subspace<GRat>]) -> crate::Result<Value> {
    let list: crate::Result<Vec<Value>> = ws
        .iter()
        .map(|w| {
            Ok(json!({
                "basis": matrix_to_json(&DynMatrix::Exact(
                    ScalarMode::ExactGaussianRational,
                    w.basis().clone(),
                ))?
            }))
        })
        .collect();
    Ok(json!({ "subspaces": list? }))
}

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

/// A provider loaded from a specification string, keeping the finite-group
/// data accessible for enumeration oracles.
pub enum LoadedProvider {
    Finite(FiniteGroupProvider),
    Sl2(Sl2Provider),
}

impl LoadedProvider {
    pub fn as_intertwiner(&self) -> &dyn IntertwinerProvider {
        match self {
            LoadedProvider::Finite(p) => p,
            LoadedProvider::Sl2(p) => p,
        }
    }

    pub fn finite_rep(&self) -> Option<&MatrixRep> {
        match self {
            LoadedProvider::Finite(p) => Some(p.rep()),
            LoadedProvider::Sl2(_) => None,
        }
    }
}

/// Builtin representation by name.
pub fn builtin_rep(name: &str) -> crate::Result<MatrixRep> {
    match name {
        "s3-perm" => Ok(crate::providers::s3_permutation()),
        "s3-regular" => Ok(crate::providers::s3_regular()),
        "d4-twisted" => Ok(crate::providers::d4_twisted()),
        "q8-mixed" => Ok(crate::providers::q8_mixed()),
        "a4-rotations" => Ok(crate::providers::a4_rotations()),
        "trivial" => {
            let id: Matrix<GRat> = Matrix::identity(3);
            let (_, rep) = group_closure(&[id], 2)?;
            Ok(rep)
        }
        other => Err(crate::Error::Validation(format!(
            "unknown builtin representation {other:?} (expected s3-perm, s3-regular, d4-twisted, q8-mixed, a4-rotations, trivial)"
        ))),
    }
}

/// Provider specification: `finite:<group file>`, `sl2:<n>`,
/// `builtin:<name>`, or `builtin-regular:<name>` (regular representation of
/// the named builtin's group).
pub fn load_provider(spec: &str, cap: usize) -> crate::Result<LoadedProvider> {
    if let Some(n) = spec.strip_prefix("sl2:") {
        let n: usize = n
            .parse()
            .map_err(|_| crate::Error::Parse(format!("bad sl2 weight in {spec:?}")))?;
        return Ok(LoadedProvider::Sl2(Sl2Provider::new(n)));
    }
    if let Some(path) = spec.strip_prefix("finite:") {
        let rep = read_group_file(Path::new(path), cap)?;
        return Ok(LoadedProvider::Finite(FiniteGroupProvider::new(rep, spec)));
    }
    if let Some(name) = spec.strip_prefix("builtin:") {
        let rep = builtin_rep(name)?;
        return Ok(LoadedProvider::Finite(FiniteGroupProvider::new(rep, spec)));
    }
    if let Some(name) = spec.strip_prefix("builtin-regular:") {
        let rep = builtin_rep(name)?;
        let reg = regular_rep(&rep.group);
        return Ok(LoadedProvider::Finite(FiniteGroupProvider::new(reg, spec)));
    }
    Err(crate::Error::Validation(format!(
        "unknown provider spec {spec:?} (expected finite:<file>, sl2:<n>, builtin:<name>)"
    )))
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    GenDensity,
    IsotropyScan,
    TannakaCheck,
    OracleCompare,
    OpennessProbe,
    AxbDemo,
    Psl2Demo,
    HopfKernel,
}

/// Algebra input for density scenarios: explicit matrix blocks, the
/// square-zero family, or a JSON file with a matrix basis or structure
/// constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraSpec {
    Blocks(Vec<usize>),
    SquareZero(usize),
    File(String),
}

impl AlgebraSpec {
    pub fn load(&self) -> crate::Result<FinDimAlgebra> {
        match self {
            AlgebraSpec::Blocks(sizes) => FinDimAlgebra::matrix_blocks(sizes),
            AlgebraSpec::SquareZero(n) => Ok(FinDimAlgebra::nilpotent_square_zero(*n)),
            AlgebraSpec::File(path) => {
                let v: Value = serde_json::from_reader(std::fs::File::open(Path::new(path))?)?;
                read_algebra_json(&v)
            }
        }
    }
}

/// Algebra file: `{"matrix_basis": [matrix, …]}` or
/// `{"structure_constants": [[[…]]], "unit": […]}`.
pub fn read_algebra_json(v: &Value) -> crate::Result<FinDimAlgebra> {
    if let Some(basis) = v.get("matrix_basis").and_then(Value::as_array) {
        let mats: crate::Result<Vec<Matrix<GRat>>> = basis
            .iter()
            .map(|m| match matrix_from_json(m)? {
                DynMatrix::Exact(_, m) => Ok(m),
                DynMatrix::Float(..) => Err(crate::Error::Mode("algebra basis must be exact".into())),
            })
            .collect();
        return FinDimAlgebra::from_matrix_basis(mats?);
    }
    if let Some(sc) = v.get("structure_constants") {
        let table: Vec<Vec<Vec<String>>> = serde_json::from_value(sc.clone())?;
        let unit: Vec<String> = serde_json::from_value(
            v.get("unit")
                .cloned()
                .ok_or_else(|| crate::Error::Parse("structure constants need a unit".into()))?,
        )?;
        let parse_vec = |v: &[String]| -> crate::Result<Vec<GRat>> {
            v.iter().map(|s| s.parse()).collect()
        };
        let mut tensor = Vec::new();
        for row in &table {
            let mut r = Vec::new();
            for cell in row {
                r.push(parse_vec(cell)?);
            }
            tensor.push(r);
        }
        return FinDimAlgebra::from_structure_constants(tensor, parse_vec(&unit)?);
    }
    Err(crate::Error::Parse(
        "algebra file needs matrix_basis or structure_constants".into(),
    ))
}

/// One experiment description. Seeds are mandatory; the remaining fields are
/// validated against the experiment kind before execution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provider: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<DensitySampler>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ScalarMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on: Option<RestrictionTarget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_file: Option<String>,
    /// Constraint profile: (subspace index, threshold) pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psl2_n: Option<usize>,
}

impl Scenario {
    pub fn from_file(path: &Path) -> crate::Result<Scenario> {
        let v: Value = serde_json::from_reader(std::fs::File::open(path)?)?;
        let s: Scenario = serde_json::from_value(v)?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> crate::Result<()> {
        if let Some(m) = &self.mode {
            m.validate()?;
        }
        let need = |cond: bool, what: &str| -> crate::Result<()> {
            if cond {
                Ok(())
            } else {
                Err(crate::Error::Validation(format!(
                    "scenario kind {:?} requires {what}",
                    self.kind
                )))
            }
        };
        match self.kind {
            ScenarioKind::GenDensity => {
                need(self.algebra.is_some(), "an algebra")?;
                need(self.tuple_size.is_some(), "tuple_size")?;
                need(self.trials.is_some(), "trials")?;
                need(self.sampler.is_some(), "a sampler")?;
            }
            ScenarioKind::IsotropyScan | ScenarioKind::OracleCompare => {
                need(self.provider.is_some(), "a provider")?;
                need(self.d.is_some(), "d")?;
                need(self.trials.is_some(), "trials")?;
            }
            ScenarioKind::TannakaCheck => {
                need(self.provider.is_some(), "a provider")?;
                need(self.subspace_file.is_some(), "a subspace file")?;
            }
            ScenarioKind::OpennessProbe => {
                need(self.provider.is_some(), "a provider")?;
                need(self.d.is_some(), "d")?;
                need(self.trials.is_some(), "trials")?;
                need(self.probes.is_some(), "probes")?;
            }
            ScenarioKind::AxbDemo => {
                need(self.trials.is_some(), "trials")?;
            }
            ScenarioKind::Psl2Demo => {
                need(self.psl2_n.is_some(), "psl2_n")?;
                need(self.trials.is_some(), "trials")?;
            }
            ScenarioKind::HopfKernel => {
                need(self.provider.is_some(), "a provider")?;
                need(
                    self.subspace_file.is_some() || self.trials.is_some(),
                    "a subspace file or trials",
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip_exact() {
        let m: Matrix<GRat> = Matrix::from_rows(vec![
            vec![GRat::from_ratio(1, 2), GRat::i()],
            vec![GRat::from_int(-3), GRat::ZERO],
        ]);
        let v = matrix_to_json(&DynMatrix::Exact(ScalarMode::ExactGaussianRational, m.clone()))
            .unwrap();
        match matrix_from_json(&v).unwrap() {
            DynMatrix::Exact(mode, back) => {
                assert_eq!(mode, ScalarMode::ExactGaussianRational);
                assert_eq!(back, m);
            }
            _ => panic!("mode changed"),
        }
    }

    #[test]
    fn rational_mode_rejects_imaginary() {
        let m: Matrix<GRat> = Matrix::from_rows(vec![vec![GRat::i()]]);
        assert!(matrix_to_json(&DynMatrix::Exact(ScalarMode::ExactRational, m)).is_err());
        let v = json!({
            "mode": {"kind": "exact-rational"},
            "rows": [["1+1 i"]]
        });
        assert!(matches!(matrix_from_json(&v), Err(crate::Error::Mode(_))));
    }

    #[test]
    fn float_matrix_roundtrip() {
        let m: Matrix<C64> = Matrix::from_rows(vec![vec![C64::new(0.5, -1.25)]]);
        let v = matrix_to_json(&DynMatrix::Float(1e-9, m.clone())).unwrap();
        match matrix_from_json(&v).unwrap() {
            DynMatrix::Float(tol, back) => {
                assert_eq!(tol, 1e-9);
                assert_eq!(back, m);
            }
            _ => panic!("mode changed"),
        }
        // Zero tolerance is invalid.
        let bad = json!({"mode": {"kind": "float-complex", "tolerance": 0.0}, "rows": [[[1.0, 0.0]]]});
        assert!(matrix_from_json(&bad).is_err());
    }

    #[test]
    fn group_file_from_generators() {
        let v = json!({
            "matrix_generators": [
                {"mode": {"kind": "exact-rational"},
                 "rows": [["0", "1", "0"], ["1", "0", "0"], ["0", "0", "1"]]},
                {"mode": {"kind": "exact-rational"},
                 "rows": [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]]}
            ]
        });
        let rep = read_group_json(&v, 16).unwrap();
        assert_eq!(rep.group.order(), 6);
    }

    #[test]
    fn provider_specs() {
        assert!(load_provider("sl2:2", 64).is_ok());
        assert!(load_provider("builtin:q8-mixed", 64).is_ok());
        assert!(load_provider("builtin:nope", 64).is_err());
        assert!(load_provider("nonsense", 64).is_err());
    }

    #[test]
    fn scenario_validation() {
        let good = Scenario {
            kind: ScenarioKind::AxbDemo,
            seed: 1,
            provider: None,
            algebra: None,
            tuple_size: None,
            sampler: None,
            mode: None,
            d: None,
            ell: None,
            on: None,
            trials: Some(100),
            probes: None,
            eps: None,
            n_max: None,
            subspace_file: None,
            profile: None,
            psl2_n: None,
        };
        assert!(good.validate().is_ok());
        let mut bad = good.clone();
        bad.kind = ScenarioKind::GenDensity;
        assert!(bad.validate().is_err());
        // Serde roundtrip.
        let s = serde_json::to_string(&good).unwrap();
        let back: Scenario = serde_json::from_str(&s).unwrap();
        assert_eq!(back.kind, ScenarioKind::AxbDemo);
    }

    #[test]
    fn subspace_file_roundtrip() {
        let ws = vec![
            Subspace::line(vec![GRat::from_int(1), GRat::from_int(-1), GRat::ZERO]),
            Subspace::new(Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap(),
        ];
        let v = subspaces_to_json(&ws).unwrap();
        let back = read_subspaces_json(&v).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back[0].equals(&ws[0]));
        assert!(back[1].equals(&ws[1]));
    }
}
