//! Maurer–Cartan simplices of an L∞-algebra: DGA maps from its CE algebra to
//! polynomial forms on `Δ^m`, their simplicial structure, horn fillers for
//! nilpotent algebras, gauge integration and the abelian period classification.

mod abelian;
mod fill;
mod gauge;
mod random;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::forms::{FormError, PolyForm, PolyMap};
use crate::linf::{CEAlgebra, CePoly, LInftyAlgebra, LinfError};

pub use abelian::{homotopy_witness, period_class, relative_primitive, AbelianComparison};
pub use fill::{adapted_basis, fill_horn, AdaptedBasis, Horn};
pub use gauge::{integrate_nilpotent_gauge, LieData, NilpotentGauge};
pub use random::{random_form, random_mc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntlError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error("expected {expected} generator forms, found {found}")]
    Count { expected: usize, found: usize },
    #[error("generator {generator} has degree {expected} but its form is not homogeneous of that degree")]
    Degree { generator: String, expected: usize },
    #[error("forms live on Δ^{found}, expected Δ^{expected}")]
    Simplex { expected: usize, found: usize },
    #[error("the algebra is not nilpotent; exact filling needs a nilpotent algebra (the SU(2) string case is numeric)")]
    NotNilpotent,
    #[error("facet {facet} is not a Maurer–Cartan element: {detail}")]
    InvalidFacet { facet: usize, detail: String },
    #[error("horn facets {0} and {1} disagree on their common face")]
    Incompatible(usize, usize),
    #[error("horn Λ[{m},{j}] is missing facet {facet}")]
    MissingFacet { m: usize, j: usize, facet: usize },
    #[error("the algebra must be abelian and concentrated in one degree")]
    NotAbelian,
    #[error("face {0} of the simplex is not zero")]
    NonzeroBoundary(usize),
    #[error("gauge integration failed: {0}")]
    Gauge(String),
    #[error("malformed element: {0}")]
    Parse(String),
}

/// An `m`-simplex of the integrated object: one form per CE generator, indexed by
/// the generator's global index (the basis order of the algebra).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCElement {
    pub m: usize,
    pub forms: Vec<PolyForm>,
}

/// First failing generator equation, if any.
#[derive(Debug, Clone)]
pub struct McReport {
    pub holds: bool,
    pub failure: Option<(String, PolyForm)>,
}

impl fmt::Display for McReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "Maurer–Cartan equations hold"),
            Some((g, r)) => write!(f, "d x − φ(δx) ≠ 0 for {g}: residual {r}"),
        }
    }
}

impl MCElement {
    pub fn zero(l: &LInftyAlgebra, m: usize) -> Self {
        MCElement {
            m,
            forms: vec![PolyForm::zero(m); l.total_dim()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(PolyForm::is_zero)
    }

    pub fn pullback(&self, map: &PolyMap) -> Result<MCElement, IntlError> {
        Ok(MCElement {
            m: map.source_dim(),
            forms: self.forms.iter().map(|f| f.pullback(map)).collect::<Result<_, _>>()?,
        })
    }

    pub fn face(&self, i: usize) -> Result<MCElement, IntlError> {
        self.pullback(&PolyMap::face(self.m, i)?)
    }

    pub fn degeneracy(&self, i: usize) -> Result<MCElement, IntlError> {
        self.pullback(&PolyMap::degeneracy(self.m, i)?)
    }

    /// `{"schema": 1, "kind": "mc-element", "algebra", "m", "forms": {"<degree>:<index>": form}}`.
    pub fn to_json(&self, l: &LInftyAlgebra) -> Value {
        let forms: serde_json::Map<String, Value> = l
            .basis()
            .into_iter()
            .zip(&self.forms)
            .filter(|(_, f)| !f.is_zero())
            .map(|(e, f)| (e.to_string(), serde_json::to_value(f).expect("forms serialize")))
            .collect();
        json!({ "schema": 1, "kind": "mc-element", "algebra": l.name, "m": self.m, "forms": forms })
    }

    /// Missing generators default to the zero form; `schema` and `kind` may be
    /// omitted.
    pub fn from_json(l: &LInftyAlgebra, v: &Value) -> Result<MCElement, IntlError> {
        if v.get("schema").is_some_and(|s| s.as_u64() != Some(1)) {
            return Err(IntlError::Parse("unsupported schema".into()));
        }
        if v.get("kind").is_some_and(|k| k.as_str() != Some("mc-element")) {
            return Err(IntlError::Parse("not an mc-element document".into()));
        }
        let m = v
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| IntlError::Parse("missing \"m\"".into()))? as usize;
        let mut forms = vec![PolyForm::zero(m); l.total_dim()];
        let index: BTreeMap<String, usize> = l
            .basis()
            .into_iter()
            .map(|e| (e.to_string(), l.global_index(e)))
            .collect();
        if let Some(obj) = v.get("forms") {
            let obj = obj
                .as_object()
                .ok_or_else(|| IntlError::Parse("\"forms\" must be an object".into()))?;
            for (key, f) in obj {
                let &g = index
                    .get(key)
                    .ok_or_else(|| IntlError::Parse(format!("unknown generator {key}")))?;
                let form: PolyForm =
                    serde_json::from_value(f.clone()).map_err(|e| IntlError::Parse(e.to_string()))?;
                if form.dim() != m {
                    return Err(IntlError::Simplex { expected: m, found: form.dim() });
                }
                forms[g] = form;
            }
        }
        Ok(MCElement { m, forms })
    }
}

/// `φ(p)` for a CE polynomial, with generators sent to `forms`.
pub(crate) fn evaluate(p: &CePoly, forms: &[PolyForm], m: usize) -> PolyForm {
    let mut out = PolyForm::zero(m);
    for (mono, c) in &p.terms {
        let mut term = PolyForm::constant(m, c.clone());
        for &g in mono {
            term = term.wedge(&forms[g]);
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    out
}

fn check_shape(ce: &CEAlgebra, x: &MCElement) -> Result<(), IntlError> {
    if x.forms.len() != ce.len() {
        return Err(IntlError::Count {
            expected: ce.len(),
            found: x.forms.len(),
        });
    }
    for (g, f) in x.forms.iter().enumerate() {
        if f.dim() != x.m {
            return Err(IntlError::Simplex { expected: x.m, found: f.dim() });
        }
        if !f.is_homogeneous_of(ce.generator_degree(g)) {
            return Err(IntlError::Degree {
                generator: ce.label(g).to_string(),
                expected: ce.generator_degree(g),
            });
        }
    }
    Ok(())
}

/// Checks `d φ(ξ) = φ(δξ)` for every generator.
pub fn validate_mc(l: &LInftyAlgebra, x: &MCElement) -> Result<McReport, IntlError> {
    validate_with(&l.ce(), x)
}

pub(crate) fn validate_with(ce: &CEAlgebra, x: &MCElement) -> Result<McReport, IntlError> {
    check_shape(ce, x)?;
    for (g, f) in x.forms.iter().enumerate() {
        let residual = &f.d() - &evaluate(ce.differential(g), &x.forms, x.m);
        if !residual.is_zero() {
            return Ok(McReport {
                holds: false,
                failure: Some((ce.label(g).to_string(), residual)),
            });
        }
    }
    Ok(McReport {
        holds: true,
        failure: None,
    })
}
