//! Loading documents from paths or corpus names, and the document kinds that
//! only the command line uses.

use std::path::Path;

use linftykan::forms::PolyForm;
use linftykan::homot::BoundaryData;
use linftykan::linf::LInftyAlgebra;
use linftykan::simpset::Collapse;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::corpus;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Linf(#[from] linftykan::linf::LinfError),
    #[error(transparent)]
    Form(#[from] linftykan::forms::FormError),
    #[error(transparent)]
    Intl(#[from] linftykan::intl::IntlError),
    #[error(transparent)]
    Homot(#[from] linftykan::homot::HomotError),
    #[error(transparent)]
    Simp(#[from] linftykan::simpset::SimpError),
    #[error(transparent)]
    String(#[from] linftykan::stringmod::StringError),
    #[error(transparent)]
    Scalar(#[from] linftykan::ScalarError),
}

pub fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Reads `arg` as a file if it exists; otherwise looks it up in the corpus by
/// name, also trying the file stem (so `examples/su2.json` finds `su2`).
pub fn resolve(arg: &str) -> Result<Value, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: arg.into(), source })?;
        return serde_json::from_str(&text).map_err(|e| input(format!("{arg}: {e}")));
    }
    let entries = corpus::load()?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    entries
        .iter()
        .find(|(name, _)| name == arg || name == stem)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| input(format!("{arg}: no such file or corpus entry")))
}

pub fn kind(v: &Value) -> &str {
    v.get("kind").and_then(Value::as_str).unwrap_or("")
}

/// An algebra document, optionally carrying the homotopy data of the simply
/// connected group under `"group"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: LInftyAlgebra,
    pub group: Option<BoundaryData>,
}

impl AlgebraFile {
    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        let mut rest = v.clone();
        let group = match rest.as_object_mut().and_then(|o| o.remove("group")) {
            Some(g) => Some(BoundaryData::from_json(&g)?),
            None => None,
        };
        Ok(AlgebraFile { algebra: LInftyAlgebra::from_json(&rest)?, group })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.algebra.to_json();
        if let Some(g) = &self.group {
            v["group"] = g.to_json();
        }
        v
    }

    pub fn load(arg: &str) -> Result<Self, CliError> {
        Self::from_json(&resolve(arg)?)
    }
}

/// A subcomplex of `Δ[n]` by its nondegenerate simplices, with an optional
/// collapse certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub n: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collapse: Option<Collapse>,
}

/// Four faces of a bundle 3-simplex cut from a built-in map, with fiber
/// coordinates `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetrahedronDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub map: String,
    pub b: [f64; 4],
}

pub fn typed<T: for<'de> Deserialize<'de>>(v: &Value, expected: &str) -> Result<T, CliError> {
    if kind(v) != expected {
        return Err(input(format!("expected a {expected:?} document, found kind {:?}", kind(v))));
    }
    if v.get("schema").and_then(Value::as_u64) != Some(1) {
        return Err(input("unsupported or missing schema"));
    }
    serde_json::from_value(v.clone()).map_err(|e| input(e.to_string()))
}

/// A polynomial form, either bare (`{"m", "terms"}`) or tagged with
/// `"schema": 1, "kind": "form"`.
pub fn form(v: &Value) -> Result<PolyForm, CliError> {
    let mut obj = v.as_object().cloned().ok_or_else(|| input("a form document must be an object"))?;
    if let Some(s) = obj.remove("schema") {
        if s.as_u64() != Some(1) {
            return Err(input("unsupported schema"));
        }
    }
    if let Some(k) = obj.remove("kind") {
        if k.as_str() != Some("form") {
            return Err(input(format!("expected a form document, found kind {k}")));
        }
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| input(e.to_string()))
}

pub fn form_json(f: &PolyForm) -> Value {
    let mut v = serde_json::to_value(f).expect("forms serialize");
    v["schema"] = 1.into();
    v["kind"] = "form".into();
    v
}
