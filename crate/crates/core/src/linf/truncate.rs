//! Postnikov truncations of an L∞-algebra as quotients by graded ideals.
//!
//! `τ≤n L` divides `L_n` by `im ∂_{n+1}` and kills everything above `n`;
//! `τ<n L` divides `L_n` by `ker ∂_n` and kills everything above `n`.

use std::fmt;

use super::{GVec, LInftyAlgebra, LinfError};
use crate::gradedlin::{extend_basis, standard_basis, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// `τ≤n`
    AtMost,
    /// `τ<n`
    Below,
}

impl fmt::Display for TruncationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruncationMode::AtMost => "≤",
            TruncationMode::Below => "<",
        })
    }
}

/// Quotient algebra with its projection `L → τL` and a linear section `τL → L`,
/// both given per degree of `L`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub algebra: LInftyAlgebra,
    pub projection: Vec<Matrix>,
    pub section: Vec<Matrix>,
}

impl Truncation {
    /// Composite `self.algebra → L → next.algebra` when both truncate the same `L`.
    pub fn map_to(&self, next: &Truncation) -> Vec<Matrix> {
        (0..self.projection.len())
            .map(|d| next.projection[d].mul(&self.section[d]))
            .collect()
    }
}

pub fn truncate_linf(l: &LInftyAlgebra, n: usize, mode: TruncationMode) -> Result<Truncation, LinfError> {
    let mut projection = Vec::new();
    let mut section = Vec::new();
    let mut dims = Vec::new();
    for d in 0..l.top() {
        let dim = l.dim(d);
        let ideal: Vec<Vec<Scalar>> = if d < n {
            Vec::new()
        } else if d > n {
            standard_basis(dim)
        } else {
            match mode {
                TruncationMode::AtMost => l.differential(d + 1).column_space(),
                TruncationMode::Below => l.differential(d).kernel(),
            }
        };
        let complement = extend_basis(dim, &ideal, &standard_basis(dim));
        let mut full = ideal.clone();
        full.extend(complement.iter().cloned());
        let inv = Matrix::from_columns(dim, &full)
            .inverse()
            .expect("ideal basis plus complement is a basis");
        let k = ideal.len();
        let mut q = Matrix::zeros(complement.len(), dim);
        for i in 0..complement.len() {
            for j in 0..dim {
                q[(i, j)] = inv[(k + i, j)].clone();
            }
        }
        projection.push(q);
        section.push(Matrix::from_columns(dim, &complement));
        dims.push(complement.len());
    }
    let name = format!("τ{mode}{n}({})", l.name);
    let mut out = LInftyAlgebra::new(name, l.field().clone(), dims.clone());
    for key in super::enumerate_keys_up_to(&out, l.max_arity()) {
        let inputs: Vec<GVec> = key
            .iter()
            .map(|e| GVec {
                degree: e.degree,
                coords: section[e.degree].column(e.index),
            })
            .collect();
        let v = l.bracket(&inputs);
        if v.is_zero() || v.degree >= dims.len() {
            continue;
        }
        out.set_bracket(&key, projection[v.degree].apply(&v.coords))?;
    }
    // Pad to L's degree range so projections compose degreewise.
    while projection.len() < l.top() {
        projection.push(Matrix::zeros(0, 0));
        section.push(Matrix::zeros(0, 0));
    }
    Ok(Truncation {
        algebra: out,
        projection,
        section,
    })
}
