//! Integration of a flat nilpotent connection `α` to a map `u: Δ^m → g` in
//! exponential coordinates with `−α = f⁻¹ df` for `f = exp(u)`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use super::fill::adapted_basis;
use super::{IntlError, MCElement};
use crate::forms::{PolyForm, PolyMap};
use crate::gradedlin::Matrix;
use crate::linf::{Elem, GVec, LInftyAlgebra};
use crate::scalar::Scalar;

/// Structure constants of a finite-dimensional Lie algebra: `c[a][b]` is the
/// coordinate vector of `[e_a, e_b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieData {
    pub dim: usize,
    c: Vec<Vec<Vec<Scalar>>>,
}

impl LieData {
    /// The Lie algebra `H₀ = L₀ / ℓ₁(L₁)`, presented on the basis `basis` (vectors
    /// of `L₀` spanning a complement of the boundaries) with `coords` reading off
    /// the complement coordinates of an element of `L₀`.
    pub fn from_complement(l: &LInftyAlgebra, basis: &[Vec<Scalar>], coords: &Matrix) -> Self {
        let dim = basis.len();
        let c = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let v = l.bracket(&[
                            GVec { degree: 0, coords: basis[a].clone() },
                            GVec { degree: 0, coords: basis[b].clone() },
                        ]);
                        if v.coords.is_empty() {
                            vec![Scalar::zero(); dim]
                        } else {
                            coords.apply(&v.coords)
                        }
                    })
                    .collect()
            })
            .collect();
        LieData { dim, c }
    }

    /// Degree-0 part of `l` with its binary bracket.
    pub fn from_degree_zero(l: &LInftyAlgebra) -> Self {
        let n = l.dim(0);
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| GVec::basis(l, Elem::new(0, i)).coords).collect();
        Self::from_complement(l, &basis, &Matrix::identity(n))
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xa * yb;
                for (o, c) in out.iter_mut().zip(&self.c[a][b]) {
                    if !c.is_zero() {
                        *o += &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// `[A ∧ B]` for `g`-valued forms given componentwise.
    pub fn bracket_forms(&self, a: &[PolyForm], b: &[PolyForm]) -> Vec<PolyForm> {
        let m = a.first().or(b.first()).map_or(0, PolyForm::dim);
        let mut out = vec![PolyForm::zero(m); self.dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            for (k, bk) in b.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                if self.c[i][k].iter().all(Scalar::is_zero) {
                    continue;
                }
                let w = ai.wedge(bk);
                for (o, c) in out.iter_mut().zip(&self.c[i][k]) {
                    if !c.is_zero() {
                        *o = &*o + &w.scale(c);
                    }
                }
            }
        }
        out
    }

    /// `θ(u) = exp(−u) d exp(u) = Σ_k (−1)^k/(k+1)! ad_u^k du`.
    pub fn log_derivative(&self, u: &[PolyForm]) -> Vec<PolyForm> {
        let mut term: Vec<PolyForm> = u.iter().map(PolyForm::d).collect();
        let mut total = term.clone();
        for k in 1.. {
            term = self.bracket_forms(u, &term);
            if term.iter().all(PolyForm::is_zero) {
                break;
            }
            let fact: BigInt = (1..=k + 1).map(BigInt::from).product();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = Scalar::from_rational(BigRational::new(BigInt::from(sign), fact));
            for (t, x) in total.iter_mut().zip(&term) {
                *t = &*t + &x.scale(&c);
            }
        }
        total
    }

    /// The flat connection `−θ(u)` of a gauge.
    pub fn connection_of(&self, u: &[PolyForm]) -> Vec<PolyForm> {
        self.log_derivative(u).into_iter().map(|f| -f).collect()
    }
}

/// `ψ(z) = z / (1 − e^{−z}) = Σ_k (−1)^k B_k z^k / k!`, coefficients up to `n`.
fn psi_coefficients(n: usize) -> Vec<Scalar> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=n {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (i, bi) in b.iter().enumerate() {
            s += bi * BigRational::from(binom.clone());
            binom = binom * BigInt::from(k + 1 - i) / BigInt::from(i + 1);
        }
        b.push(-s / BigRational::from(BigInt::from(k + 1)));
    }
    let mut fact = BigInt::one();
    b.into_iter()
        .enumerate()
        .map(|(k, bk)| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            let v = bk / BigRational::from(fact.clone());
            Scalar::from_rational(if k % 2 == 1 { -v } else { v })
        })
        .collect()
}

/// Solves `θ(u) = −α`, `u(base) = 0` by Picard iteration along the segments from
/// the base vertex. `α` is a flat `g`-valued 1-form on `Δ^m`.
pub(crate) fn integrate_connection(lie: &LieData, alpha: &[PolyForm], m: usize, base: usize) -> Result<Vec<PolyForm>, IntlError> {
    if base > m {
        return Err(IntlError::Gauge(format!("base vertex {base} outside Δ^{m}")));
    }
    // H(x, τ) = b + τ (x − b) on Δ^m × [0,1], τ the last coordinate.
    let tau = PolyForm::coord(m + 1, m + 1);
    let comps = (1..=m)
        .map(|i| {
            let x = PolyForm::coord(m + 1, i);
            if i == base {
                &(&PolyForm::one(m + 1) - &tau) + &tau.wedge(&x)
            } else {
                tau.wedge(&x)
            }
        })
        .collect();
    let h = PolyMap::new(m + 1, comps)?;
    let mut field = vec![PolyForm::zero(m + 1); m + 1];
    field[m] = PolyForm::one(m + 1);
    let a: Vec<PolyForm> = alpha
        .iter()
        .map(|f| Ok((-f).pullback(&h)?.contract(&field)))
        .collect::<Result<_, IntlError>>()?;

    let psi = psi_coefficients(lie.dim + 1);
    let mut w = vec![PolyForm::zero(m + 1); lie.dim];
    let mut converged = false;
    for _ in 0..lie.dim + 2 {
        // ψ(ad_w) A
        let mut term = a.clone();
        let mut rhs = a.clone();
        for coef in psi.iter().skip(1) {
            term = lie.bracket_forms(&w, &term);
            if term.iter().all(PolyForm::is_zero) {
                break;
            }
            for (r, t) in rhs.iter_mut().zip(&term) {
                *r = &*r + &t.scale(coef);
            }
        }
        let next: Vec<PolyForm> = rhs.iter().map(PolyForm::s_antiderivative).collect::<Result<_, _>>()?;
        if next == w {
            converged = true;
            break;
        }
        w = next;
    }
    if !converged {
        return Err(IntlError::Gauge("Picard iteration did not stabilize; the algebra is not nilpotent".into()));
    }
    let mut at_one: Vec<PolyForm> = (1..=m).map(|i| PolyForm::coord(m, i)).collect();
    at_one.push(PolyForm::one(m));
    let end = PolyMap::new(m, at_one)?;
    let u: Vec<PolyForm> = w.iter().map(|f| f.pullback(&end)).collect::<Result<_, _>>()?;
    let check = lie.log_derivative(&u);
    if check.iter().zip(alpha).any(|(t, a)| &(t + a) != &PolyForm::zero(m)) {
        return Err(IntlError::Gauge("connection is not flat".into()));
    }
    Ok(u)
}

/// Exponential-coordinate gauge `u: Δ^m → L₀` of a Maurer–Cartan simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentGauge {
    pub u: Vec<PolyForm>,
    pub base: usize,
}

impl NilpotentGauge {
    /// Value of `u` at vertex `v`.
    pub fn at_vertex(&self, v: usize) -> Vec<Scalar> {
        self.u
            .iter()
            .map(|f| {
                let m = f.dim();
                let point: Vec<Scalar> = (1..=m).map(|i| if i == v { Scalar::one() } else { Scalar::zero() }).collect();
                f.evaluate(&point).constant_term()
            })
            .collect()
    }
}

/// Gauge based at vertex 0 for the degree-0 component of `x`. When `ℓ₁: L₁ → L₀`
/// is nonzero the connection is taken in `L₀ / ℓ₁(L₁)` and `u` is reported through
/// the complement of the boundaries chosen by the adapted basis.
pub fn integrate_nilpotent_gauge(l: &LInftyAlgebra, x: &MCElement) -> Result<NilpotentGauge, IntlError> {
    if !l.is_nilpotent().0 {
        return Err(IntlError::NotNilpotent);
    }
    let report = super::validate_mc(l, x)?;
    if !report.holds {
        return Err(IntlError::InvalidFacet { facet: x.m, detail: report.to_string() });
    }
    let n0 = l.dim(0);
    if n0 == 0 {
        return Ok(NilpotentGauge { u: Vec::new(), base: 0 });
    }
    let ab = adapted_basis(l);
    let (hb, hcoords) = ab.homology_block(0);
    let lie = LieData::from_complement(l, &hb, &hcoords);
    let alpha: Vec<PolyForm> = (0..hb.len())
        .map(|r| {
            let mut f = PolyForm::zero(x.m);
            for i in 0..n0 {
                let c = &hcoords[(r, i)];
                if !c.is_zero() {
                    f = &f + &x.forms[i].scale(c);
                }
            }
            f
        })
        .collect();
    let v = integrate_connection(&lie, &alpha, x.m, 0)?;
    let u = (0..n0)
        .map(|i| {
            let mut f = PolyForm::zero(x.m);
            for (a, va) in v.iter().enumerate() {
                if !hb[a][i].is_zero() {
                    f = &f + &va.scale(&hb[a][i]);
                }
            }
            f
        })
        .collect();
    Ok(NilpotentGauge { u, base: 0 })
}
