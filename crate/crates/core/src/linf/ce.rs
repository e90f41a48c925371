//! Chevalley–Eilenberg algebra: the free graded-commutative algebra on the dual
//! basis of `L`, with the generator dual to `L_d` placed in degree `d + 1`.
//!
//! For a basis tuple `e₁ ≤ … ≤ e_k` (sorted by `(degree, index)`) with multiplicities
//! `μ`, the differential of the generator `ξ^a` collects
//!
//! ```text
//! 1/μ! · (−1)^{Σᵢ (k−i)|eᵢ|} · ℓ_k(e₁,…,e_k)^a · ξ^{e₁}⋯ξ^{e_k}
//! ```
//!
//! which is the sum over all orderings of the inputs divided by `k!`; every ordering
//! contributes the same monomial. With this normalization a Lie algebra yields
//! `dα = ½[α∧α]`, a ternary bracket yields `dβ = (1/6)[α,α,α]`, and `δ² = 0`
//! matches the usual L∞ relations with `ℓ₁ ℓ₃ = −Jacobiator`; the conformance
//! tests pin all three.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;

use super::{Elem, LInftyAlgebra};
use crate::scalar::Scalar;

/// Monomial in CE generators: nondecreasing global generator indices.
pub type Monomial = Vec<usize>;

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Polynomial in the CE generators with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CePoly {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl CePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        let mut p = Self::zero();
        p.terms.insert(vec![g], Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &CePoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

/// CE algebra of an L∞-algebra: generator degrees and the differential table.
#[derive(Clone)]
pub struct CEAlgebra {
    generators: Vec<Elem>,
    degrees: Vec<usize>,
    labels: Vec<String>,
    diff: Vec<CePoly>,
}

/// Outcome of the `δ² = 0` check.
#[derive(Debug, Clone)]
pub struct SquareZeroReport {
    pub holds: bool,
    /// `(generator label, monomial rendering, coefficient)` for every nonzero term of `δ²`.
    pub violations: Vec<(String, String, Scalar)>,
}

impl CEAlgebra {
    pub fn new(l: &LInftyAlgebra) -> Self {
        let generators = l.basis();
        let degrees: Vec<usize> = generators.iter().map(|e| e.degree + 1).collect();
        let labels = generators.iter().map(|&e| format!("ξ[{}]", l.label(e))).collect();
        let mut diff = vec![CePoly::zero(); generators.len()];
        for (inputs, output) in l.brackets() {
            let k = inputs.len();
            let out_deg = inputs.iter().map(|e| e.degree).sum::<usize>() + k - 2;
            let mut mult = BigInt::from(1);
            let mut run = 1;
            for i in 1..=k {
                if i < k && inputs[i] == inputs[i - 1] {
                    run += 1;
                } else {
                    mult *= factorial(run);
                    run = 1;
                }
            }
            let exponent: usize = inputs.iter().enumerate().map(|(i, e)| (k - 1 - i) * e.degree).sum();
            let sign = if exponent % 2 == 0 { 1 } else { -1 };
            let factor = Scalar::from_rational(BigRational::new(BigInt::from(sign), mult));
            let monomial: Monomial = inputs.iter().map(|&e| l.global_index(e)).collect();
            for (a, coef) in output.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let g = l.global_index(Elem::new(out_deg, a));
                diff[g].add_term(monomial.clone(), &factor * coef);
            }
        }
        CEAlgebra {
            generators,
            degrees,
            labels,
            diff,
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_elem(&self, g: usize) -> Elem {
        self.generators[g]
    }

    pub fn generator_degree(&self, g: usize) -> usize {
        self.degrees[g]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// `δ` of generator `g`.
    pub fn differential(&self, g: usize) -> &CePoly {
        &self.diff[g]
    }

    pub fn monomial_degree(&self, m: &[usize]) -> usize {
        m.iter().map(|&g| self.degrees[g]).sum()
    }

    /// Graded-commutative product of two monomials: `None` if it vanishes,
    /// otherwise the normal-ordered monomial and whether the sign is negative.
    pub fn multiply_monomials(&self, a: &[usize], b: &[usize]) -> Option<(Monomial, bool)> {
        let mut neg = false;
        for &x in b {
            if self.degrees[x] % 2 == 1 {
                if a.contains(&x) {
                    return None;
                }
                let passed = a.iter().filter(|&&y| y > x && self.degrees[y] % 2 == 1).count();
                if passed % 2 == 1 {
                    neg = !neg;
                }
            }
        }
        let mut m: Monomial = a.iter().chain(b).copied().collect();
        m.sort_unstable();
        Some((m, neg))
    }

    pub fn multiply(&self, p: &CePoly, q: &CePoly) -> CePoly {
        let mut out = CePoly::zero();
        for (a, ca) in &p.terms {
            for (b, cb) in &q.terms {
                if let Some((m, neg)) = self.multiply_monomials(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Extends `δ` to polynomials as a degree-1 derivation.
    pub fn apply(&self, p: &CePoly) -> CePoly {
        let mut out = CePoly::zero();
        for (m, c) in &p.terms {
            let mut left_degree = 0;
            for i in 0..m.len() {
                let g = m[i];
                let left = CePoly {
                    terms: BTreeMap::from([(m[..i].to_vec(), Scalar::one())]),
                };
                let right = CePoly {
                    terms: BTreeMap::from([(m[i + 1..].to_vec(), Scalar::one())]),
                };
                let term = self.multiply(&self.multiply(&left, &self.diff[g]), &right);
                let sign = if left_degree % 2 == 0 { c.clone() } else { -c };
                for (mm, cc) in term.terms {
                    out.add_term(mm, &sign * &cc);
                }
                left_degree += self.degrees[g];
            }
        }
        out
    }

    pub fn render_monomial(&self, m: &[usize]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&g| self.labels[g].as_str()).collect::<Vec<_>>().join("·")
    }

    /// Checks `δ² = 0` on every generator.
    pub fn square_zero(&self) -> SquareZeroReport {
        let mut violations = Vec::new();
        for g in 0..self.len() {
            let dd = self.apply(&self.diff[g]);
            for (m, c) in dd.terms {
                violations.push((self.labels[g].clone(), self.render_monomial(&m), c));
            }
        }
        SquareZeroReport {
            holds: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for CEAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in 0..self.len() {
            write!(f, "δ{} =", self.labels[g])?;
            if self.diff[g].is_zero() {
                write!(f, " 0")?;
            }
            for (m, c) in &self.diff[g].terms {
                write!(f, " + ({c})·{}", self.render_monomial(m))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl LInftyAlgebra {
    pub fn ce_square_zero(&self) -> SquareZeroReport {
        self.ce().square_zero()
    }
}
