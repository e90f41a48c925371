//! Exact real scalars: rationals adjoined square roots of squarefree integers.
//!
//! A [`Scalar`] is a finite sum `q₀ + Σ qᵣ·√r` with rational `qᵣ` and distinct
//! squarefree radicands `r ≥ 2`. Square roots of distinct squarefree integers are
//! linearly independent over ℚ, so this representation is canonical and equality is
//! structural. The set of radicands a computation may use is fixed by a
//! [`ScalarField`].
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ["+" | "-"] term {("+" | "-") term}
//! term   := factor {"*" factor}
//! factor := INT ["/" INT] | "sqrt" INT | "sqrt(" INT ")"
//! ```
//!
//! e.g. `"3/4"`, `"1/2*sqrt2 + 5"`, `"-sqrt(3)*2/5"`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {value} uses sqrt{radicand}, which is outside the configured field {field}")]
    Unsupported {
        value: String,
        radicand: u64,
        field: String,
    },
    #[error("cannot parse scalar field {0:?} (expected \"Q\" or \"Q(sqrt2,sqrt3,...)\")")]
    Field(String),
}

/// Element of a multiquadratic extension of ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    /// Sorted by radicand, all coefficients nonzero.
    surds: Vec<(u64, BigRational)>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Splits `n` as `k² · r` with `r` squarefree; returns `(k, r)`.
fn square_part(mut n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (k, r * n)
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            rational: BigRational::zero(),
            surds: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            rational: q,
            surds: Vec::new(),
        }
    }

    /// `√n` for any `n ≥ 0`, normalized to `k·√r` with `r` squarefree.
    pub fn sqrt(n: u64) -> Self {
        let (k, r) = square_part(n);
        let c = BigRational::from_integer(BigInt::from(k));
        if n == 0 {
            Self::zero()
        } else if r == 1 {
            Self::from_rational(c)
        } else {
            Scalar {
                rational: BigRational::zero(),
                surds: vec![(r, c)],
            }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// `(radicand, coefficient)` pairs of the irrational part.
    pub fn surds(&self) -> &[(u64, BigRational)] {
        &self.surds
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surds.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.surds.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.surds.is_empty()
    }

    /// Returns the value as a rational number when it has no irrational part.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    /// Coordinates over ℚ in the basis `1, √r₁, √r₂, …` given by `basis`
    /// (`basis[0]` must be 1). Returns `None` if a radicand is missing.
    pub fn coordinates(&self, basis: &[u64]) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); basis.len()];
        let pos = |r: u64| basis.iter().position(|&b| b == r);
        out[pos(1)?] = self.rational.clone();
        for (r, c) in &self.surds {
            out[pos(*r)?] = c.clone();
        }
        Some(out)
    }

    fn build(rational: BigRational, mut terms: Vec<(u64, BigRational)>) -> Self {
        terms.sort_by_key(|(r, _)| *r);
        let mut surds: Vec<(u64, BigRational)> = Vec::with_capacity(terms.len());
        for (r, c) in terms {
            match surds.last_mut() {
                Some((lr, lc)) if *lr == r => *lc += c,
                _ => surds.push((r, c)),
            }
        }
        surds.retain(|(_, c)| !c.is_zero());
        Scalar { rational, surds }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Scalar {
            rational: &self.rational * q,
            surds: self.surds.iter().map(|(r, c)| (*r, c * q)).collect(),
        }
    }

    /// Writes `self = a + b·√p` where neither `a` nor `b` involves the prime `p`.
    fn split_prime(&self, p: u64) -> (Scalar, Scalar) {
        let mut a_terms = Vec::new();
        let mut b_terms = Vec::new();
        let mut b_rat = BigRational::zero();
        for (r, c) in &self.surds {
            if r % p == 0 {
                let rest = r / p;
                if rest == 1 {
                    b_rat += c;
                } else {
                    b_terms.push((rest, c.clone()));
                }
            } else {
                a_terms.push((*r, c.clone()));
            }
        }
        (
            Scalar::build(self.rational.clone(), a_terms),
            Scalar::build(b_rat, b_terms),
        )
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.surds.is_empty() {
            return Ok(Self::from_rational(self.rational.recip()));
        }
        let p = smallest_prime_factor(self.surds[0].0);
        let (a, b) = self.split_prime(p);
        // (a + b√p)(a − b√p) = a² − p·b², free of √p.
        let norm = &(&a * &a) - &(&b * &b).scale(&BigRational::from_integer(BigInt::from(p)));
        let conj = &a - &(&b * &Scalar::sqrt(p));
        Ok(&conj * &norm.inv()?)
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.surds.is_empty() {
            return if self.rational.is_positive() {
                1
            } else if self.rational.is_negative() {
                -1
            } else {
                0
            };
        }
        let p = smallest_prime_factor(self.surds[0].0);
        let (a, b) = self.split_prime(p);
        let (sa, sb) = (a.signum(), b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and p·b² wins.
        let diff = &(&a * &a) - &(&b * &b).scale(&BigRational::from_integer(BigInt::from(p)));
        match diff.signum() {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.rational.to_f64().unwrap_or(f64::NAN);
        for (r, c) in &self.surds {
            x += c.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt();
        }
        x
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Radicands used by this value.
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.surds.iter().map(|(r, _)| *r)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on the real line.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut terms = self.surds.clone();
        terms.extend(o.surds.iter().cloned());
        Scalar::build(&self.rational + &o.rational, terms)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut terms = self.surds.clone();
        terms.extend(o.surds.iter().map(|(r, c)| (*r, -c)));
        Scalar::build(&self.rational - &o.rational, terms)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let mut rational = &self.rational * &o.rational;
        let mut terms = Vec::new();
        for (r, c) in &o.surds {
            if !self.rational.is_zero() {
                terms.push((*r, &self.rational * c));
            }
        }
        for (r, c) in &self.surds {
            if !o.rational.is_zero() {
                terms.push((*r, c * &o.rational));
            }
            for (s, d) in &o.surds {
                let g = gcd_u64(*r, *s);
                let rest = (r / g) * (s / g);
                let coef = c * d * BigRational::from_integer(BigInt::from(g));
                if rest == 1 {
                    rational += coef;
                } else {
                    terms.push((rest, coef));
                }
            }
        }
        Scalar::build(rational, terms)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rational: -&self.rational,
            surds: self.surds.iter().map(|(r, c)| (*r, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Panics on division by zero, like integer division; use [`Scalar::inv`] to handle it.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("scalar division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if o.surds.is_empty() {
            self.rational += &o.rational;
        } else {
            *self = &*self + o;
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self += &o;
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl<'a> MulAssign<&'a Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.rational.is_zero() || self.surds.is_empty() {
            parts.push((
                self.rational.is_negative(),
                fmt_rational(&self.rational.abs()),
            ));
        }
        for (r, c) in &self.surds {
            let a = c.abs();
            let body = if a.is_one() {
                format!("sqrt{r}")
            } else {
                format!("{}*sqrt{r}", fmt_rational(&a))
            };
            parts.push((c.is_negative(), body));
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> ScalarError {
        ScalarError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| self.err("bad integer"))
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        if self.s[self.pos..].starts_with(b"sqrt") {
            self.pos += 4;
            let paren = self.eat(b'(');
            let n = self.int()?;
            if paren && !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            let n = n.to_u64().ok_or_else(|| self.err("radicand out of range"))?;
            return Ok(Scalar::sqrt(n));
        }
        let n = self.int()?;
        let d = if self.eat(b'/') {
            self.int()?
        } else {
            BigInt::one()
        };
        if d.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(Scalar::from_rational(BigRational::new(n, d)))
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::zero();
        let mut first = true;
        while self.pos < self.s.len() || first {
            let neg = if self.eat(b'-') {
                true
            } else {
                if !self.eat(b'+') && !first {
                    return Err(self.err("expected '+' or '-'"));
                }
                false
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(input: &str) -> Result<Self, ScalarError> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            s: compact.as_bytes(),
            pos: 0,
            input,
        };
        p.expr()
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The scalar field ℚ(√r₁, …, √r_k) a computation is allowed to use.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalarField {
    generators: BTreeSet<u64>,
}

impl ScalarField {
    pub fn rationals() -> Self {
        Self::default()
    }

    pub fn with_sqrts(radicands: &[u64]) -> Self {
        ScalarField {
            generators: radicands
                .iter()
                .map(|&n| square_part(n).1)
                .filter(|&r| r > 1)
                .collect(),
        }
    }

    /// All squarefree radicands whose square roots lie in the field, including 1.
    /// These form a ℚ-basis of the field.
    pub fn basis(&self) -> Vec<u64> {
        let mut out: BTreeSet<u64> = BTreeSet::from([1]);
        for &g in &self.generators {
            let next: Vec<u64> = out
                .iter()
                .map(|&b| {
                    let h = gcd_u64(b, g);
                    (b / h) * (g / h)
                })
                .collect();
            out.extend(next);
        }
        out.into_iter().collect()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let basis = self.basis();
        x.radicands().all(|r| basis.contains(&r))
    }

    pub fn check(&self, x: &Scalar) -> Result<(), ScalarError> {
        let basis = self.basis();
        match x.radicands().find(|r| !basis.contains(r)) {
            None => Ok(()),
            Some(r) => Err(ScalarError::Unsupported {
                value: x.to_string(),
                radicand: r,
                field: self.to_string(),
            }),
        }
    }

    /// Smallest field containing both.
    pub fn join(&self, other: &ScalarField) -> ScalarField {
        ScalarField {
            generators: self.generators.union(&other.generators).copied().collect(),
        }
    }

    /// Smallest field containing every given scalar.
    pub fn generated_by<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> ScalarField {
        let mut generators = BTreeSet::new();
        for x in xs {
            generators.extend(x.radicands());
        }
        ScalarField { generators }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "Q");
        }
        let inner: Vec<String> = self.generators.iter().map(|r| format!("sqrt{r}")).collect();
        write!(f, "Q({})", inner.join(","))
    }
}

impl FromStr for ScalarField {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(Self::rationals());
        }
        let inner = compact
            .strip_prefix("Q(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::Field(s.to_string()))?;
        let mut radicands = Vec::new();
        for part in inner.split(',') {
            let n = part
                .strip_prefix("sqrt")
                .map(|x| x.trim_start_matches('(').trim_end_matches(')'))
                .and_then(|x| x.parse::<u64>().ok())
                .ok_or_else(|| ScalarError::Field(s.to_string()))?;
            radicands.push(n);
        }
        Ok(Self::with_sqrts(&radicands))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(s("3/4").to_string(), "3/4");
        assert_eq!(s("1/2*sqrt2 + 5").to_string(), "5 + 1/2*sqrt2");
        assert_eq!(s("sqrt8").to_string(), "2*sqrt2");
        assert_eq!(s("-sqrt(3)*2/5").to_string(), "-2/5*sqrt3");
        assert_eq!(s("sqrt4"), Scalar::from_int(2));
        assert_eq!(s(" 0 ").to_string(), "0");
        assert!("1//2".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn products_of_roots() {
        assert_eq!(&s("sqrt2") * &s("sqrt2"), Scalar::from_int(2));
        assert_eq!(&s("sqrt6") * &s("sqrt3"), s("3*sqrt2"));
        assert_eq!(&s("sqrt2") * &s("sqrt3"), s("sqrt6"));
    }

    #[test]
    fn inverse_in_biquadratic_field() {
        let x = s("1 + sqrt2 + sqrt3");
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(s("3 - 2*sqrt2").signum(), 1);
        assert_eq!(s("99 - 70*sqrt2").signum(), 1);
        assert_eq!(s("140 - 99*sqrt2").signum(), -1);
        assert_eq!(s("sqrt2 + sqrt3 - sqrt10").signum(), -1);
        assert!(s("sqrt2") < s("3/2"));
    }

    #[test]
    fn field_membership() {
        let f: ScalarField = "Q(sqrt2,sqrt3)".parse().unwrap();
        assert_eq!(f.basis(), vec![1, 2, 3, 6]);
        assert!(f.contains(&s("sqrt6")));
        assert!(f.check(&s("sqrt5")).is_err());
        assert_eq!(f.to_string(), "Q(sqrt2,sqrt3)");
        assert_eq!("Q".parse::<ScalarField>().unwrap(), ScalarField::rationals());
    }
}
