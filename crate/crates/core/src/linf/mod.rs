//! Finite-dimensional L∞-algebras given by structure constants.
//!
//! A basis element is an [`Elem`] `(degree, index)`. The k-ary bracket has degree
//! `k − 2` and is graded antisymmetric with Koszul signs: swapping adjacent inputs
//! `x, y` multiplies by `−(−1)^{|x||y|}`. Brackets are stored once per sorted input
//! tuple; a tuple may repeat an element only if its degree is odd (otherwise the
//! bracket vanishes by antisymmetry).

mod ce;
mod constructors;
mod json;
mod truncate;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use ce::{CEAlgebra, CePoly, Monomial, SquareZeroReport};
pub use constructors::{
    abelian, build_end_example, contractible, heisenberg, lie_algebra, su2, StringLieTwoAlgebra,
};
pub use truncate::{truncate_linf, TruncationMode, Truncation};

use crate::gradedlin::{two_term_homology, GradedVectorSpace, Homology, Matrix};
use crate::scalar::{Scalar, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinfError {
    #[error("bracket on {inputs:?}: {reason}")]
    Invariant { inputs: Vec<Elem>, reason: String },
    #[error("basis element {0:?} does not exist")]
    NoSuchElement(Elem),
    #[error("p and q are linearly dependent over Q")]
    Dependent,
    #[error("pairing is not {0}")]
    Pairing(&'static str),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("malformed document: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Basis element `index` of `L_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub degree: usize,
    pub index: usize,
}

impl Elem {
    pub fn new(degree: usize, index: usize) -> Self {
        Elem { degree, index }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.degree, self.index)
    }
}

/// Homogeneous element of `L`: degree plus coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVec {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl GVec {
    pub fn basis(l: &LInftyAlgebra, e: Elem) -> Self {
        let mut coords = vec![Scalar::zero(); l.dim(e.degree)];
        coords[e.index] = Scalar::one();
        GVec {
            degree: e.degree,
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

fn koszul_swap_sign(a: usize, b: usize) -> bool {
    // true means the swap contributes a factor −1
    (a * b) % 2 == 0
}

/// Sorts `inputs` in place; returns `None` if the bracket vanishes by symmetry,
/// otherwise whether an odd number of sign flips occurred.
fn sort_with_sign(inputs: &mut [Elem]) -> Option<bool> {
    let mut neg = false;
    for i in 1..inputs.len() {
        let mut j = i;
        while j > 0 && inputs[j - 1] > inputs[j] {
            if koszul_swap_sign(inputs[j - 1].degree, inputs[j].degree) {
                neg = !neg;
            }
            inputs.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in inputs.windows(2) {
        if w[0] == w[1] && w[0].degree % 2 == 0 {
            return None;
        }
    }
    Some(neg)
}

/// L∞-algebra with structure constants over an exact scalar field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInftyAlgebra {
    pub name: String,
    field: ScalarField,
    /// `dims[d] = dim L_d`.
    dims: Vec<usize>,
    labels: BTreeMap<usize, Vec<String>>,
    brackets: BTreeMap<Vec<Elem>, Vec<Scalar>>,
}

impl LInftyAlgebra {
    pub fn new(name: impl Into<String>, field: ScalarField, dims: Vec<usize>) -> Self {
        let mut dims = dims;
        while dims.last() == Some(&0) {
            dims.pop();
        }
        LInftyAlgebra {
            name: name.into(),
            field,
            dims,
            labels: BTreeMap::new(),
            brackets: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    /// Number of degrees `0..top` that may be nonzero.
    pub fn top(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn space(&self) -> GradedVectorSpace {
        let mut s = GradedVectorSpace::new(self.dims.iter().copied().enumerate());
        for (d, l) in &self.labels {
            s = s.with_labels(*d, l.clone());
        }
        s
    }

    pub fn set_labels(&mut self, degree: usize, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim(degree));
        self.labels.insert(degree, labels);
    }

    pub fn label(&self, e: Elem) -> String {
        self.labels
            .get(&e.degree)
            .and_then(|l| l.get(e.index).cloned())
            .unwrap_or_else(|| e.to_string())
    }

    /// All basis elements ordered by `(degree, index)`.
    pub fn basis(&self) -> Vec<Elem> {
        self.dims
            .iter()
            .enumerate()
            .flat_map(|(d, &n)| (0..n).map(move |i| Elem::new(d, i)))
            .collect()
    }

    /// Position of `e` in [`Self::basis`].
    pub fn global_index(&self, e: Elem) -> usize {
        self.dims[..e.degree].iter().sum::<usize>() + e.index
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Stored brackets: sorted input tuple → output coordinates.
    pub fn brackets(&self) -> impl Iterator<Item = (&[Elem], &[Scalar])> {
        self.brackets.iter().map(|(k, v)| (k.as_slice(), v.as_slice()))
    }

    fn output_degree(inputs: &[Elem]) -> Option<usize> {
        let total: usize = inputs.iter().map(|e| e.degree).sum::<usize>() + inputs.len();
        total.checked_sub(2)
    }

    /// Sets `ℓ_k(inputs) = output`, reordering the inputs with the Koszul sign.
    pub fn set_bracket(&mut self, inputs: &[Elem], output: Vec<Scalar>) -> Result<(), LinfError> {
        let err = |reason: String| LinfError::Invariant {
            inputs: inputs.to_vec(),
            reason,
        };
        if inputs.is_empty() {
            return Err(err("0-ary brackets are not supported".into()));
        }
        for e in inputs {
            if e.index >= self.dim(e.degree) {
                return Err(LinfError::NoSuchElement(*e));
            }
        }
        let out_deg = Self::output_degree(inputs).ok_or_else(|| err("negative output degree".into()))?;
        if output.len() != self.dim(out_deg) {
            return Err(err(format!(
                "output has {} coordinates but L_{out_deg} has dimension {}",
                output.len(),
                self.dim(out_deg)
            )));
        }
        for x in &output {
            self.field.check(x)?;
        }
        let mut key = inputs.to_vec();
        let Some(neg) = sort_with_sign(&mut key) else {
            if output.iter().all(Scalar::is_zero) {
                return Ok(());
            }
            return Err(err("repeated even-degree input must give zero".into()));
        };
        let output: Vec<Scalar> = if neg { output.iter().map(|x| -x).collect() } else { output };
        if output.iter().all(Scalar::is_zero) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, output);
        }
        Ok(())
    }

    /// `ℓ_k` on basis elements in any order; `None` when the result is zero.
    pub fn bracket_basis(&self, inputs: &[Elem]) -> Option<Vec<Scalar>> {
        let mut key = inputs.to_vec();
        let neg = sort_with_sign(&mut key)?;
        let out = self.brackets.get(&key)?;
        Some(if neg { out.iter().map(|x| -x).collect() } else { out.clone() })
    }

    /// Multilinear extension of `ℓ_k` to homogeneous vectors.
    pub fn bracket(&self, inputs: &[GVec]) -> GVec {
        let total = inputs.iter().map(|v| v.degree).sum::<usize>() + inputs.len();
        let Some(out_deg) = total.checked_sub(2) else {
            // ℓ₁ on L₀ lands in degree −1, which is zero.
            return GVec {
                degree: 0,
                coords: Vec::new(),
            };
        };
        let mut acc = vec![Scalar::zero(); self.dim(out_deg)];
        let supports: Vec<Vec<(usize, &Scalar)>> = inputs
            .iter()
            .map(|v| v.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; inputs.len()];
        if supports.iter().any(Vec::is_empty) {
            return GVec {
                degree: out_deg,
                coords: acc,
            };
        }
        loop {
            let elems: Vec<Elem> = idx
                .iter()
                .enumerate()
                .map(|(s, &i)| Elem::new(inputs[s].degree, supports[s][i].0))
                .collect();
            if let Some(out) = self.bracket_basis(&elems) {
                let mut coef = Scalar::one();
                for (s, &i) in idx.iter().enumerate() {
                    coef = &coef * supports[s][i].1;
                }
                for (a, o) in acc.iter_mut().zip(&out) {
                    if !o.is_zero() {
                        *a += &(&coef * o);
                    }
                }
            }
            let mut s = 0;
            loop {
                if s == idx.len() {
                    return GVec {
                        degree: out_deg,
                        coords: acc,
                    };
                }
                idx[s] += 1;
                if idx[s] < supports[s].len() {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
        }
    }

    /// Matrix of the unary bracket `∂_n = ℓ₁: L_n → L_{n−1}` (`n ≥ 1`).
    pub fn differential(&self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim(n.wrapping_sub(1)), self.dim(n));
        if n == 0 {
            return Matrix::zeros(0, self.dim(0));
        }
        for j in 0..self.dim(n) {
            if let Some(out) = self.bracket_basis(&[Elem::new(n, j)]) {
                for (i, x) in out.into_iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
        }
        m
    }

    /// `H_n(L) = ker ∂_n / im ∂_{n+1}`.
    pub fn homology(&self, n: usize) -> Homology {
        two_term_homology(&self.differential(n + 1), &self.differential(n))
            .expect("∂∘∂ = 0 for an L∞-algebra with square-zero CE differential")
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.top()).map(|n| self.homology(n).dim).collect()
    }

    /// Chevalley–Eilenberg algebra of `L`.
    pub fn ce(&self) -> CEAlgebra {
        CEAlgebra::new(self)
    }

    /// Expresses `L` in a new basis: the columns of `change[d]` are the new basis
    /// vectors of `L_d` in old coordinates.
    pub fn change_basis(&self, change: &[Matrix]) -> Result<LInftyAlgebra, LinfError> {
        if change.len() != self.top() {
            return Err(LinfError::Shape(format!("{} basis changes for {} degrees", change.len(), self.top())));
        }
        let inverses: Vec<Matrix> = change
            .iter()
            .map(|p| p.inverse().ok_or_else(|| LinfError::Shape("singular basis change".into())))
            .collect::<Result<_, _>>()?;
        let mut out = LInftyAlgebra::new(self.name.clone(), self.field.clone(), self.dims.clone());
        for key in enumerate_keys(self) {
            let inputs: Vec<GVec> = key
                .iter()
                .map(|e| GVec {
                    degree: e.degree,
                    coords: change[e.degree].column(e.index),
                })
                .collect();
            let v = self.bracket(&inputs);
            if v.is_zero() {
                continue;
            }
            let coords = inverses[v.degree].apply(&v.coords);
            out.set_bracket(&key, coords)?;
        }
        Ok(out)
    }

    /// Checks that `maps[d]: L_d → M_d` intertwines every bracket.
    pub fn is_isomorphism(&self, other: &LInftyAlgebra, maps: &[Matrix]) -> bool {
        if self.dims != other.dims || maps.len() != self.top() {
            return false;
        }
        if maps.iter().any(|m| m.inverse().is_none()) {
            return false;
        }
        let arity = self.max_arity().max(other.max_arity());
        for key in enumerate_keys_up_to(self, arity) {
            let lhs = self.bracket(
                &key.iter().map(|&e| GVec::basis(self, e)).collect::<Vec<_>>(),
            );
            let lhs = if lhs.coords.is_empty() { lhs.coords } else { maps[lhs.degree].apply(&lhs.coords) };
            let mapped: Vec<GVec> = key
                .iter()
                .map(|e| GVec {
                    degree: e.degree,
                    coords: maps[e.degree].column(e.index),
                })
                .collect();
            let rhs = other.bracket(&mapped).coords;
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Lower central series over all brackets; `Some(c)` if it reaches zero after
    /// `c` steps.
    /// Terms `L = F¹ ⊋ F² ⊋ … ⊋ F^c ⊋ 0` of the lower central series, where
    /// `F^{k+1}` is spanned by all brackets (including `ℓ₁`) with at least one input
    /// in `F^k`. Each term is a spanning set of homogeneous vectors. `None` when the
    /// series stabilizes above zero.
    pub fn lower_central_series(&self) -> Option<Vec<Vec<GVec>>> {
        let arity = self.max_arity();
        let basis = self.basis();
        let mut current: Vec<GVec> = basis.iter().map(|&e| GVec::basis(self, e)).collect();
        let mut terms = Vec::new();
        let mut prev_dim = self.total_dim();
        while prev_dim > 0 {
            terms.push(current.clone());
            let mut next: Vec<GVec> = Vec::new();
            for v in &current {
                for k in 1..=arity {
                    for rest in tuples(&basis, k - 1) {
                        let mut inputs = vec![v.clone()];
                        inputs.extend(rest.iter().map(|&e| GVec::basis(self, e)));
                        let out = self.bracket(&inputs);
                        if !out.is_zero() {
                            next.push(out);
                        }
                    }
                }
            }
            let reduced = span_basis(self, &next);
            if reduced.len() == prev_dim {
                return None;
            }
            prev_dim = reduced.len();
            current = reduced;
        }
        Some(terms)
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.lower_central_series().map(|t| t.len())
    }

    pub fn is_nilpotent(&self) -> (bool, Option<usize>) {
        let c = self.nilpotency_class();
        (c.is_some(), c)
    }
}

/// Basis (per degree) of the span of homogeneous vectors.
fn span_basis(l: &LInftyAlgebra, vs: &[GVec]) -> Vec<GVec> {
    let mut out = Vec::new();
    for d in 0..l.top() {
        let cols: Vec<Vec<Scalar>> = vs.iter().filter(|v| v.degree == d).map(|v| v.coords.clone()).collect();
        if cols.is_empty() {
            continue;
        }
        for c in Matrix::from_columns(l.dim(d), &cols).column_space() {
            out.push(GVec { degree: d, coords: c });
        }
    }
    out
}

/// All ordered `k`-tuples from `basis`.
fn tuples(basis: &[Elem], k: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                basis.iter().map(move |&e| {
                    let mut t2 = t.clone();
                    t2.push(e);
                    t2
                })
            })
            .collect();
    }
    out
}

/// All canonical sorted input tuples (with odd repeats allowed) of arity up to the
/// algebra's maximal arity whose output degree exists.
fn enumerate_keys(l: &LInftyAlgebra) -> Vec<Vec<Elem>> {
    enumerate_keys_up_to(l, l.max_arity())
}

fn enumerate_keys_up_to(l: &LInftyAlgebra, arity: usize) -> Vec<Vec<Elem>> {
    let basis = l.basis();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &frontier {
            for &e in &basis {
                if let Some(&last) = t.last() {
                    if e < last || (e == last && e.degree % 2 == 0) {
                        continue;
                    }
                }
                let mut t2 = t.clone();
                t2.push(e);
                let deg = LInftyAlgebra::output_degree(&t2);
                if deg.is_some_and(|d| d < l.top()) {
                    out.push(t2.clone());
                }
                next.push(t2);
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry_sign() {
        let l = su2();
        let a = l.bracket_basis(&[Elem::new(0, 0), Elem::new(0, 1)]).unwrap();
        let b = l.bracket_basis(&[Elem::new(0, 1), Elem::new(0, 0)]).unwrap();
        assert_eq!(a, b.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(l.bracket_basis(&[Elem::new(0, 0), Elem::new(0, 0)]).is_none());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(abelian(&[2, 1]).is_nilpotent(), (true, Some(1)));
        assert_eq!(heisenberg().is_nilpotent(), (true, Some(2)));
        assert_eq!(su2().is_nilpotent(), (false, None));
    }
}
