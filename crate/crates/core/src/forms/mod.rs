//! Polynomial differential forms on the standard simplex.
//!
//! A form on `Δ^m` is written in the affine coordinates `t₁…t_m` (with
//! `t₀ = 1 − Σtᵢ` and `dt₀ = −Σdtᵢ` eliminated), so every form has a unique sparse
//! expansion `Σ c · t^e dt_S` with `S ⊂ {1…m}` increasing.

mod horn;
mod map;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

pub use horn::{homotopy_operator, horn_extend_form, horn_projection, literal_flow_term, HornFamily};
pub use map::PolyMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("form degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("index {index} out of range for Δ^{m}")]
    Index { index: usize, m: usize },
    #[error("horn facets {0} and {1} disagree on their common face")]
    Incompatible(usize, usize),
    #[error("d of horn facet {0} differs from the prescribed form restricted to it")]
    Mismatch(usize),
    #[error("horn Λ[{m},{j}] is missing facet {facet}")]
    MissingFacet { m: usize, j: usize, facet: usize },
    #[error("prescribed differential is not closed")]
    NotClosed,
    #[error("parameter integral expects no ds terms")]
    HasDs,
    #[error("invalid form data: {0}")]
    Invalid(String),
}

/// Sparse key: exponent vector over `t₁…t_m` and the dt-subset as a bitmask
/// (bit `i−1` for `dtᵢ`).
pub type FormKey = (Vec<u32>, u64);

/// Polynomial differential form on `Δ^m` (or on any affine space with `m` coordinates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyForm {
    dim: usize,
    terms: BTreeMap<FormKey, Scalar>,
}

/// Sign of `dt_a ∧ dt_b` reordered into increasing order; `None` if they overlap.
fn merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut neg = false;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        // number of elements of `a` above `bit`
        let above = (a >> (bit + 1)).count_ones();
        if above % 2 == 1 {
            neg = !neg;
        }
    }
    Some(neg)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

impl PolyForm {
    pub fn zero(dim: usize) -> Self {
        PolyForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(vec![0; dim], 0, c);
        f
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    /// Coordinate function `tᵢ`, `1 ≤ i ≤ dim`; `i = 0` gives `t₀ = 1 − Σtᵢ`.
    pub fn coord(dim: usize, i: usize) -> Self {
        assert!(i <= dim, "coordinate t{i} on a {dim}-dimensional simplex");
        if i == 0 {
            let mut f = Self::one(dim);
            for k in 1..=dim {
                f = &f - &Self::coord(dim, k);
            }
            return f;
        }
        let mut e = vec![0; dim];
        e[i - 1] = 1;
        let mut f = Self::zero(dim);
        f.add_term(e, 0, Scalar::one());
        f
    }

    /// `dtᵢ`; `i = 0` gives `dt₀ = −Σdtᵢ`.
    pub fn dt(dim: usize, i: usize) -> Self {
        Self::coord(dim, i).d()
    }

    pub fn monomial(dim: usize, exps: Vec<u32>, dt: &[usize], c: Scalar) -> Result<Self, FormError> {
        if exps.len() != dim {
            return Err(FormError::Dimension {
                expected: dim,
                found: exps.len(),
            });
        }
        let mut f = Self::one(dim);
        f.terms.clear();
        f.add_term(exps, 0, c);
        for &i in dt {
            if i == 0 || i > dim {
                return Err(FormError::Index { index: i, m: dim });
            }
            f = f.wedge(&Self::dt(dim, i));
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<FormKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, dt: u64, c: Scalar) {
        debug_assert_eq!(exps.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry((exps, dt)) {
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

    /// Degree if all terms have the same form degree (the zero form has every degree).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(_, dt)| dt.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|(_, dt)| dt.count_ones() as usize == k)
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        PolyForm {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|((_, dt), _)| dt.count_ones() as usize == k)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest total polynomial degree among the terms.
    pub fn poly_degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        PolyForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    fn check_dim(&self, other: &PolyForm) {
        assert_eq!(self.dim, other.dim, "forms on spaces of different dimension");
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        self.check_dim(other);
        let mut out = Self::zero(self.dim);
        for ((ea, sa), ca) in &self.terms {
            for ((eb, sb), cb) in &other.terms {
                let Some(neg) = merge_sign(*sa, *sb) else { continue };
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                out.add_term(e, sa | sb, if neg { -c } else { c });
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let mut out = Self::zero(self.dim);
        for ((e, s), c) in &self.terms {
            for k in 0..self.dim {
                if e[k] == 0 || s & (1 << k) != 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[k] -= 1;
                let below = (s & ((1u64 << k) - 1)).count_ones();
                let c2 = c * &Scalar::from_int(e[k] as i64);
                out.add_term(e2, s | (1 << k), if below % 2 == 1 { -c2 } else { c2 });
            }
        }
        out
    }

    /// Interior product with the vector field `Σ_k field[k] ∂/∂t_{k+1}`, whose
    /// components are 0-forms.
    pub fn contract(&self, field: &[PolyForm]) -> PolyForm {
        assert_eq!(field.len(), self.dim, "vector field dimension");
        let mut out = Self::zero(self.dim);
        for ((e, s), c) in &self.terms {
            let mut r = 0;
            for k in 0..self.dim {
                if s & (1 << k) == 0 {
                    continue;
                }
                let mut rest = Self::zero(self.dim);
                let sign = if r % 2 == 0 { c.clone() } else { -c };
                rest.add_term(e.clone(), s & !(1 << k), sign);
                out = &out + &field[k].wedge(&rest);
                r += 1;
            }
        }
        out
    }

    /// `∫₀¹ ω ds` where `s` is the last coordinate; the result lives on the first
    /// `dim − 1` coordinates.
    pub fn s_integral(&self) -> Result<PolyForm, FormError> {
        if self.dim == 0 {
            return Err(FormError::Dimension { expected: 1, found: 0 });
        }
        let last = 1u64 << (self.dim - 1);
        let mut out = Self::zero(self.dim - 1);
        for ((e, s), c) in &self.terms {
            if s & last != 0 {
                return Err(FormError::HasDs);
            }
            let k = e[self.dim - 1];
            let w = Scalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(k + 1)));
            out.add_term(e[..self.dim - 1].to_vec(), *s, c * &w);
        }
        Ok(out)
    }

    /// `∫₀^s ω ds'` in the last coordinate, as a form on the same space.
    pub fn s_antiderivative(&self) -> Result<PolyForm, FormError> {
        if self.dim == 0 {
            return Err(FormError::Dimension { expected: 1, found: 0 });
        }
        let last = 1u64 << (self.dim - 1);
        let mut out = Self::zero(self.dim);
        for ((e, s), c) in &self.terms {
            if s & last != 0 {
                return Err(FormError::HasDs);
            }
            let mut e2 = e.clone();
            let k = e2[self.dim - 1];
            e2[self.dim - 1] += 1;
            let w = Scalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(k + 1)));
            out.add_term(e2, *s, c * &w);
        }
        Ok(out)
    }

    /// The same form viewed on a space with one more (trailing) coordinate.
    pub fn with_extra_coordinate(&self) -> PolyForm {
        let mut g = Self::zero(self.dim + 1);
        for ((e, s), c) in &self.terms {
            let mut e2 = e.clone();
            e2.push(0);
            g.add_term(e2, *s, c.clone());
        }
        g
    }

    /// `∫_{Δ^m} ω` for a top-degree form, with `dt₁∧…∧dt_m` positively oriented.
    pub fn simplex_period(&self) -> Result<Scalar, FormError> {
        let top = if self.dim == 0 { 0 } else { (1u64 << self.dim) - 1 };
        let mut total = Scalar::zero();
        for ((e, s), c) in &self.terms {
            if *s != top {
                return Err(FormError::Degree {
                    expected: self.dim,
                    found: s.count_ones() as usize,
                });
            }
            // ∫_{Δ^m} t^e = Π eᵢ! / (|e| + m)!
            let num: BigInt = e.iter().map(|&x| factorial(x as u64)).product();
            let den = factorial(e.iter().map(|&x| x as u64).sum::<u64>() + self.dim as u64);
            total += c * &Scalar::from_rational(BigRational::new(num, den));
        }
        Ok(total)
    }

    /// Value of a 0-form (or the coefficient function of each term) at a point.
    pub fn evaluate(&self, point: &[Scalar]) -> PolyForm {
        assert_eq!(point.len(), self.dim);
        let mut out = Self::zero(self.dim);
        for ((e, s), c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                v *= &x.pow(k);
            }
            out.add_term(vec![0; self.dim], *s, v);
        }
        out
    }

    /// Constant term of a 0-form.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&(vec![0; self.dim], 0))
            .cloned()
            .unwrap_or_default()
    }

    /// Pullback along a polynomial map whose target is this form's space.
    pub fn pullback(&self, map: &PolyMap) -> Result<PolyForm, FormError> {
        map.pull(self)
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: &PolyForm) -> PolyForm {
        self.check_dim(rhs);
        let mut out = self.clone();
        for ((e, s), c) in &rhs.terms {
            out.add_term(e.clone(), *s, c.clone());
        }
        out
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self + &(-rhs)
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        PolyForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Add for PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: PolyForm) -> PolyForm {
        &self + &rhs
    }
}

impl Sub for PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: PolyForm) -> PolyForm {
        &self - &rhs
    }
}

impl Neg for PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        -&self
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((e, s), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·t{}", i + 1)?,
                    _ => write!(f, "·t{}^{k}", i + 1)?,
                }
            }
            for i in 0..self.dim {
                if s & (1 << i) != 0 {
                    write!(f, "·dt{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm[m={}]({self})", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    t: Vec<u32>,
    dt: Vec<usize>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    m: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PolyForm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        FormJson {
            m: self.dim,
            terms: self
                .terms
                .iter()
                .map(|((e, s), c)| TermJson {
                    t: e.clone(),
                    dt: (0..self.dim).filter(|i| s & (1 << i) != 0).map(|i| i + 1).collect(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PolyForm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = FormJson::deserialize(de)?;
        let mut out = PolyForm::zero(raw.m);
        for t in raw.terms {
            let f = PolyForm::monomial(raw.m, t.t, &t.dt, t.c).map_err(serde::de::Error::custom)?;
            out = &out + &f;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_sign_and_d() {
        let t1 = PolyForm::coord(2, 1);
        let a = t1.wedge(&PolyForm::dt(2, 2));
        let b = a.wedge(&PolyForm::dt(2, 1));
        let expected = PolyForm::monomial(2, vec![1, 0], &[1, 2], Scalar::from_int(-1)).unwrap();
        assert_eq!(b, expected);
        assert_eq!(t1.d(), PolyForm::dt(2, 1));
        assert!(a.d().d().is_zero());
    }

    #[test]
    fn periods() {
        let vol = PolyForm::monomial(2, vec![0, 0], &[1, 2], Scalar::one()).unwrap();
        assert_eq!(vol.simplex_period().unwrap(), Scalar::from_frac(1, 2));
        let f = PolyForm::monomial(1, vec![1], &[1], Scalar::one()).unwrap();
        assert_eq!(f.simplex_period().unwrap(), Scalar::from_frac(1, 2));
        assert!(PolyForm::zero(3).simplex_period().unwrap().is_zero());
        assert!(PolyForm::coord(1, 1).simplex_period().is_err());
    }

    #[test]
    fn parameter_integral() {
        let f = PolyForm::monomial(2, vec![0, 1], &[1], Scalar::one()).unwrap();
        let expected = PolyForm::dt(1, 1).scale(&Scalar::from_frac(1, 2));
        assert_eq!(f.s_integral().unwrap(), expected);
    }

    #[test]
    fn json_round_trip() {
        let f = PolyForm::monomial(2, vec![0, 1], &[1], Scalar::from_frac(3, 4)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"m":2,"terms":[{"t":[0,1],"dt":[1],"c":"3/4"}]}"#);
        let g: PolyForm = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
