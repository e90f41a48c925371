//! Homotopy groups of the integrated object from the long exact sequence
//!
//! ```text
//! … → π_{n+1}(G) --∂_n--> H_{n−1}(L) → π_n → π_n(G) --∂_{n−1}--> H_{n−2}(L) → …
//! ```
//!
//! with `π_*(G)` and the connecting maps supplied by the caller, and the test for
//! when a Postnikov truncation integrates to a Lie `n`-group.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gradedlin::{integer_rank, subgroup_is_discrete, FGAbGroup, LinAlgError, Matrix};
use crate::scalar::{Scalar, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotError {
    #[error("∂_{n}: {reason}")]
    Inconsistent { n: usize, reason: String },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed boundary data: {0}")]
    Parse(String),
}

/// Connecting maps and homotopy groups of the degree-0 group `G`.
///
/// `boundary[n]` is the matrix of `∂_n: π_{n+1}(G) → H_{n−1}(L)` on the canonical
/// generators of `π_{n+1}(G)` (free generators first, then torsion). Missing
/// groups are trivial and missing maps are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    pub field: ScalarField,
    /// Name used for the non-abelian `π₁`.
    pub group: String,
    pub pi: BTreeMap<usize, FGAbGroup>,
    pub boundary: BTreeMap<usize, Matrix>,
}

impl BoundaryData {
    pub fn new(group: impl Into<String>, field: ScalarField) -> Self {
        BoundaryData {
            field,
            group: group.into(),
            pi: BTreeMap::new(),
            boundary: BTreeMap::new(),
        }
    }

    pub fn pi_g(&self, n: usize) -> FGAbGroup {
        self.pi.get(&n).cloned().unwrap_or_default()
    }

    /// `∂_n` padded with zeros when absent.
    fn boundary_map(&self, n: usize, homology: &[usize]) -> Result<Matrix, HomotError> {
        let rows = n.checked_sub(1).and_then(|k| homology.get(k).copied()).unwrap_or(0);
        let source = self.pi_g(n + 1);
        let cols = source.generator_count();
        let Some(m) = self.boundary.get(&n) else {
            return Ok(Matrix::zeros(rows, cols));
        };
        if m.rows() != rows || m.cols() != cols {
            return Err(HomotError::Inconsistent {
                n,
                reason: format!(
                    "matrix is {}×{} but H_{} has dimension {rows} and π_{}(G) = {source} has {cols} generators",
                    m.rows(),
                    m.cols(),
                    n.saturating_sub(1),
                    n + 1
                ),
            });
        }
        for x in (0..m.rows()).flat_map(|i| m.row(i).to_vec()) {
            self.field.check(&x)?;
        }
        // Torsion has nowhere to go in a vector space.
        for c in source.rank..cols {
            if m.column(c).iter().any(|x| !x.is_zero()) {
                return Err(HomotError::Inconsistent {
                    n,
                    reason: format!("nonzero on the torsion generator {c} of π_{}(G)", n + 1),
                });
            }
        }
        Ok(m.clone())
    }

    /// `{"schema", "kind", "field", "group", "pi": {"n": {"rank", "torsion"}}, "boundary": {"n": [[scalar…]…]}}`.
    pub fn to_json(&self) -> Value {
        let pi: serde_json::Map<String, Value> = self
            .pi
            .iter()
            .map(|(n, g)| {
                let torsion: Vec<String> = g.torsion.iter().map(BigInt::to_string).collect();
                (n.to_string(), json!({"rank": g.rank, "torsion": torsion}))
            })
            .collect();
        let boundary: serde_json::Map<String, Value> = self
            .boundary
            .iter()
            .map(|(n, m)| {
                let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(Scalar::to_string).collect()).collect();
                (n.to_string(), json!(rows))
            })
            .collect();
        json!({
            "schema": 1,
            "kind": "boundary-data",
            "field": self.field.to_string(),
            "group": self.group,
            "pi": pi,
            "boundary": boundary
        })
    }

    /// `schema` and `kind` may be omitted; when present they must be `1` and
    /// `"boundary-data"`.
    pub fn from_json(v: &Value) -> Result<Self, HomotError> {
        let err = |s: &str| HomotError::Parse(s.to_string());
        if v.get("schema").is_some_and(|s| s.as_u64() != Some(1)) {
            return Err(err("unsupported schema"));
        }
        if v.get("kind").is_some_and(|k| k.as_str() != Some("boundary-data")) {
            return Err(err("not a boundary-data document"));
        }
        let field: ScalarField = match v.get("field") {
            Some(f) => f
                .as_str()
                .ok_or_else(|| err("\"field\" must be a string"))?
                .parse()
                .map_err(|e: ScalarError| HomotError::Parse(e.to_string()))?,
            None => ScalarField::rationals(),
        };
        let group = v.get("group").and_then(Value::as_str).unwrap_or("G").to_string();
        let mut data = BoundaryData::new(group, field);
        let key = |k: &str| k.parse::<usize>().map_err(|_| HomotError::Parse(format!("degree key {k:?}")));
        if let Some(pi) = v.get("pi").and_then(Value::as_object) {
            for (k, g) in pi {
                let rank = g.get("rank").and_then(Value::as_u64).unwrap_or(0) as usize;
                let torsion: Vec<BigInt> = g
                    .get("torsion")
                    .and_then(Value::as_array)
                    .map(|a| {
                        a.iter()
                            .map(|t| match t {
                                Value::String(s) => s.parse::<BigInt>().map_err(|_| err("torsion order")),
                                Value::Number(n) => n.as_u64().map(BigInt::from).ok_or_else(|| err("torsion order")),
                                _ => Err(err("torsion order")),
                            })
                            .collect::<Result<_, _>>()
                    })
                    .transpose()?
                    .unwrap_or_default();
                data.pi.insert(key(k)?, FGAbGroup::from_parts(rank, &torsion));
            }
        }
        if let Some(b) = v.get("boundary").and_then(Value::as_object) {
            for (k, rows) in b {
                let rows = rows.as_array().ok_or_else(|| err("boundary matrix must be an array of rows"))?;
                let parsed: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| err("matrix row"))?
                            .iter()
                            .map(|x| match x {
                                Value::String(s) => s.parse::<Scalar>().map_err(|e| HomotError::Parse(e.to_string())),
                                Value::Number(n) => n.as_i64().map(Scalar::from_int).ok_or_else(|| err("matrix entry")),
                                _ => Err(err("matrix entry")),
                            })
                            .collect()
                    })
                    .collect::<Result<_, _>>()?;
                let n = key(k)?;
                let cols = data.pi_g(n + 1).generator_count();
                let m = if parsed.is_empty() { Matrix::zeros(0, cols) } else { Matrix::from_rows(parsed) };
                data.boundary.insert(n, m);
            }
        }
        Ok(data)
    }
}

/// `π_n` as an extension `0 → ℝ^d / C → π_n → K → 0`, kept unsplit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffeoGroupPres {
    pub degree: usize,
    pub vector_dim: usize,
    /// Generators of `C ⊆ ℝ^d`.
    pub subgroup: Vec<Vec<Scalar>>,
    pub discrete: FGAbGroup,
}

impl DiffeoGroupPres {
    /// Dimension of the Lie algebra of the universal cover.
    pub fn lie_algebra_dim(&self) -> usize {
        self.vector_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.vector_dim == 0 && self.discrete.is_trivial()
    }
}

impl fmt::Display for DiffeoGroupPres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.vector_dim > 0 {
            let v = if self.vector_dim == 1 { "R".to_string() } else { format!("R^{}", self.vector_dim) };
            if self.subgroup.is_empty() {
                parts.push(v);
            } else {
                let gens: Vec<String> = self
                    .subgroup
                    .iter()
                    .map(|g| format!("({})", g.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                parts.push(format!("{v}/<{}>", gens.join(", ")));
            }
        }
        if !self.discrete.is_trivial() {
            parts.push(self.discrete.to_string());
        }
        match parts.as_slice() {
            [] => write!(f, "0"),
            [one] => write!(f, "{one}"),
            [v, k] => write!(f, "extension of {k} by {v}"),
            _ => unreachable!(),
        }
    }
}

/// One entry of the assembled sequence of homotopy groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyGroup {
    /// `π₁` is the simply connected group `G` itself.
    Fundamental(String),
    Higher(DiffeoGroupPres),
}

impl fmt::Display for HomotopyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyGroup::Fundamental(g) => write!(f, "{g}"),
            HomotopyGroup::Higher(p) => write!(f, "{p}"),
        }
    }
}

/// Kernel of a homomorphism `ℤ^r ⊕ T → V` to a vector space that kills `T`: free of
/// rank `r − (ℤ-rank of the image)` plus all of `T`.
fn kernel_group(source: &FGAbGroup, m: &Matrix, field: &ScalarField) -> Result<FGAbGroup, HomotError> {
    let images: Vec<Vec<Scalar>> = (0..source.rank).map(|c| m.column(c)).collect();
    let image_rank = if images.iter().all(|v| v.is_empty()) { 0 } else { integer_rank(&images, field)? };
    Ok(FGAbGroup {
        rank: source.rank - image_rank,
        torsion: source.torsion.clone(),
    })
}

/// Assembles `π_1, …, π_{up_to}` from the homology dimensions of `L` and the
/// supplied data on `G`.
pub fn les_assemble(homology: &[usize], data: &BoundaryData, up_to: usize) -> Result<Vec<HomotopyGroup>, HomotError> {
    let mut out = Vec::new();
    if up_to >= 1 {
        out.push(HomotopyGroup::Fundamental(data.group.clone()));
    }
    for n in 2..=up_to {
        let d = homology.get(n - 1).copied().unwrap_or(0);
        let del = data.boundary_map(n, homology)?;
        let source = data.pi_g(n + 1);
        let subgroup: Vec<Vec<Scalar>> = (0..source.rank)
            .map(|c| del.column(c))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let below = data.boundary_map(n - 1, homology)?;
        let discrete = kernel_group(&data.pi_g(n), &below, &data.field)?;
        out.push(HomotopyGroup::Higher(DiffeoGroupPres {
            degree: n,
            vector_dim: d,
            subgroup,
            discrete,
        }));
    }
    Ok(out)
}

/// Whether `im(∂_n) ⊆ H_{n−1}(L)` is discrete, i.e. whether the `n`-truncation
/// integrates to a Lie `n`-group.
pub fn tvf_integrability(homology: &[usize], data: &BoundaryData, n: usize) -> Result<bool, HomotError> {
    let del = data.boundary_map(n, homology)?;
    let gens: Vec<Vec<Scalar>> = (0..data.pi_g(n + 1).rank).map(|c| del.column(c)).collect();
    if del.rows() == 0 || gens.is_empty() {
        return Ok(true);
    }
    Ok(subgroup_is_discrete(&gens, &[], &data.field)?)
}
