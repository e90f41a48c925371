//! The L∞-algebra document:
//!
//! ```json
//! {"schema": 1, "kind": "linf", "name": "su2", "scalars": "Q",
//!  "dims": {"0": 3},
//!  "labels": {"0": ["e1", "e2", "e3"]},
//!  "brackets": [{"arity": 2, "inputs": [[0, 0], [0, 1]], "output": {"2": "1"}}]}
//! ```
//!
//! `inputs` are `[degree, index]` pairs in any order (the Koszul sign is applied
//! when sorting); `output` is sparse, keyed by index in the output degree
//! `Σ degrees + arity − 2`. Scalars are strings in the scalar grammar or JSON
//! integers. Writing always produces sorted inputs, string scalars and omits
//! empty members.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Elem, LInftyAlgebra, LinfError};
use crate::scalar::{Scalar, ScalarField};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarToken {
    Int(i64),
    Text(String),
}

impl ScalarToken {
    fn value(&self) -> Result<Scalar, LinfError> {
        match self {
            ScalarToken::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarToken::Text(s) => Ok(s.parse()?),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketDoc {
    arity: usize,
    inputs: Vec<[usize; 2]>,
    output: BTreeMap<String, ScalarToken>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    schema: u32,
    #[serde(default = "kind")]
    kind: String,
    name: String,
    scalars: String,
    dims: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketDoc>,
}

fn kind() -> String {
    "linf".into()
}

fn degree_key(k: &str) -> Result<usize, LinfError> {
    k.parse().map_err(|_| LinfError::Parse(format!("degree key {k:?} is not a natural number")))
}

impl LInftyAlgebra {
    pub fn to_json(&self) -> Value {
        let doc = AlgebraDoc {
            schema: SCHEMA,
            kind: kind(),
            name: self.name.clone(),
            scalars: self.field.to_string(),
            dims: self
                .dims
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(d, &n)| (d.to_string(), n))
                .collect(),
            labels: self.labels.iter().map(|(d, l)| (d.to_string(), l.clone())).collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(inputs, out)| BracketDoc {
                    arity: inputs.len(),
                    inputs: inputs.iter().map(|e| [e.degree, e.index]).collect(),
                    output: out
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (i.to_string(), ScalarToken::Text(x.to_string())))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("algebra documents serialize")
    }

    /// Parses and validates a document: schema, field membership of every
    /// scalar, index ranges, arities, and that no tuple is given twice or
    /// repeats an even-degree input.
    pub fn from_json(v: &Value) -> Result<Self, LinfError> {
        let doc: AlgebraDoc = serde_json::from_value(v.clone()).map_err(|e| LinfError::Parse(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(LinfError::Parse(format!("unsupported schema {}", doc.schema)));
        }
        if doc.kind != "linf" {
            return Err(LinfError::Parse(format!("expected an L∞-algebra document, found kind {:?}", doc.kind)));
        }
        let field: ScalarField = doc.scalars.parse()?;
        let mut dims = Vec::new();
        for (k, &n) in &doc.dims {
            let d = degree_key(k)?;
            if dims.len() <= d {
                dims.resize(d + 1, 0);
            }
            dims[d] = n;
        }
        let mut l = LInftyAlgebra::new(doc.name, field, dims);
        for (k, labels) in doc.labels {
            let d = degree_key(&k)?;
            if labels.len() != l.dim(d) {
                return Err(LinfError::Parse(format!(
                    "{} labels given for L_{d} of dimension {}",
                    labels.len(),
                    l.dim(d)
                )));
            }
            l.set_labels(d, labels);
        }
        let mut seen = BTreeMap::new();
        for (n, b) in doc.brackets.iter().enumerate() {
            let inputs: Vec<Elem> = b.inputs.iter().map(|&[d, i]| Elem::new(d, i)).collect();
            let invariant = |reason: String| LinfError::Invariant { inputs: inputs.clone(), reason };
            if b.arity != inputs.len() {
                return Err(invariant(format!("arity {} but {} inputs", b.arity, inputs.len())));
            }
            let mut sorted = inputs.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1] && w[0].degree % 2 == 0) {
                return Err(invariant("repeated even-degree input".into()));
            }
            if let Some(first) = seen.insert(sorted, n) {
                return Err(invariant(format!("same input tuple as bracket entry {first}")));
            }
            let out_deg = (inputs.iter().map(|e| e.degree).sum::<usize>() + inputs.len())
                .checked_sub(2)
                .ok_or_else(|| invariant("negative output degree".into()))?;
            let mut output = vec![Scalar::zero(); l.dim(out_deg)];
            for (k, x) in &b.output {
                let i: usize = k
                    .parse()
                    .map_err(|_| LinfError::Parse(format!("output key {k:?} is not an index")))?;
                if i >= output.len() {
                    return Err(LinfError::NoSuchElement(Elem::new(out_deg, i)));
                }
                output[i] = x.value()?;
            }
            l.set_bracket(&inputs, output)?;
        }
        Ok(l)
    }
}
