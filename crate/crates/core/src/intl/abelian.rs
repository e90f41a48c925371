//! Abelian algebras concentrated in one degree: simplices are closed forms, and
//! two simplices with vanishing boundary are homotopic rel boundary exactly when
//! their periods agree.

use std::collections::BTreeMap;

use super::{IntlError, MCElement};
use crate::forms::{PolyForm, PolyMap};
use crate::gradedlin::Matrix;
use crate::linf::LInftyAlgebra;
use crate::scalar::Scalar;

/// The degree `n − 1` in which an abelian `L` is concentrated.
fn abelian_degree(l: &LInftyAlgebra) -> Result<usize, IntlError> {
    if l.brackets().next().is_some() {
        return Err(IntlError::NotAbelian);
    }
    let mut nonzero = (0..l.top()).filter(|&d| l.dim(d) > 0);
    match (nonzero.next(), nonzero.next()) {
        (Some(d), None) => Ok(d),
        _ => Err(IntlError::NotAbelian),
    }
}

fn check_boundary(x: &MCElement) -> Result<(), IntlError> {
    for i in 0..=x.m {
        if !x.face(i)?.is_zero() {
            return Err(IntlError::NonzeroBoundary(i));
        }
    }
    Ok(())
}

/// Periods of the generator forms of an `n`-simplex with zero boundary, for `L`
/// abelian in degree `n − 1`.
pub fn period_class(l: &LInftyAlgebra, x: &MCElement) -> Result<Vec<Scalar>, IntlError> {
    let d = abelian_degree(l)?;
    if x.m != d + 1 {
        return Err(IntlError::Simplex { expected: d + 1, found: x.m });
    }
    check_boundary(x)?;
    let offset = l.dims()[..d].iter().sum::<usize>();
    (0..l.dim(d))
        .map(|i| Ok(x.forms[offset + i].simplex_period()?))
        .collect()
}

/// All monomial `k`-forms `t^e dt_S` on `Δ^m` with `|e| ≤ degree`.
fn monomial_basis(m: usize, k: usize, degree: u32) -> Vec<(Vec<u32>, u64)> {
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..m {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=degree - used).map(move |a| {
                    let mut e2 = e.clone();
                    e2.push(a);
                    e2
                })
            })
            .collect();
    }
    let masks: Vec<u64> = (0u64..1 << m).filter(|s| s.count_ones() as usize == k).collect();
    exps.into_iter()
        .flat_map(|e| masks.iter().map(move |&s| (e.clone(), s)))
        .collect()
}

/// Solves for a polynomial `k`-form `ω` on `Δ^m` with `dω = target` (when given)
/// and prescribed restrictions to the listed facets, searching coefficient degrees
/// up to `max_degree`.
fn solve_with_boundary(
    m: usize,
    k: usize,
    target: Option<&PolyForm>,
    faces: &BTreeMap<usize, PolyForm>,
    max_degree: u32,
) -> Result<Option<PolyForm>, IntlError> {
    let face_maps: BTreeMap<usize, PolyMap> = faces
        .keys()
        .map(|&i| Ok((i, PolyMap::face(m, i)?)))
        .collect::<Result<_, IntlError>>()?;
    let start = target
        .map(|t| t.poly_degree() + 1)
        .into_iter()
        .chain(faces.values().map(PolyForm::poly_degree))
        .max()
        .unwrap_or(0);
    for degree in start..=max_degree.max(start) {
        let unknowns = monomial_basis(m, k, degree);
        // Rows are keyed by (equation block, form key).
        let mut rows: BTreeMap<(usize, Vec<u32>, u64), usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        let row_of = |block: usize, key: &(Vec<u32>, u64), rows: &mut BTreeMap<_, _>| {
            let n = rows.len();
            *rows.entry((block, key.0.clone(), key.1)).or_insert(n)
        };
        for (col, (e, s)) in unknowns.iter().enumerate() {
            let mut basis = PolyForm::zero(m);
            basis.add_term(e.clone(), *s, Scalar::one());
            if target.is_some() {
                for (key, c) in basis.d().terms() {
                    let r = row_of(0, key, &mut rows);
                    entries.push((r, col, c.clone()));
                }
            }
            for (&i, map) in &face_maps {
                for (key, c) in basis.pullback(map)?.terms() {
                    let r = row_of(i + 1, key, &mut rows);
                    entries.push((r, col, c.clone()));
                }
            }
        }
        let mut rhs_terms: Vec<(usize, Scalar)> = Vec::new();
        let mut ok = true;
        if let Some(t) = target {
            for (key, c) in t.terms() {
                match rows.get(&(0, key.0.clone(), key.1)) {
                    Some(&r) => rhs_terms.push((r, c.clone())),
                    None => ok = false,
                }
            }
        }
        for (&i, f) in faces {
            for (key, c) in f.terms() {
                match rows.get(&(i + 1, key.0.clone(), key.1)) {
                    Some(&r) => rhs_terms.push((r, c.clone())),
                    None => ok = false,
                }
            }
        }
        if !ok {
            continue;
        }
        let mut a = Matrix::zeros(rows.len(), unknowns.len());
        for (r, c, v) in entries {
            a[(r, c)] += &v;
        }
        let mut b = vec![Scalar::zero(); rows.len()];
        for (r, v) in rhs_terms {
            b[r] += &v;
        }
        if let Some(sol) = a.solve(&b) {
            let mut out = PolyForm::zero(m);
            for ((e, s), c) in unknowns.into_iter().zip(sol) {
                out.add_term(e, s, c);
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// A form `η` with `dη = z` vanishing on every facet of `Δ^m`, when `z` is closed,
/// vanishes on the boundary and (in top degree) has zero period.
pub fn relative_primitive(z: &PolyForm) -> Result<Option<PolyForm>, IntlError> {
    let m = z.dim();
    let Some(k) = z.degree() else {
        return Ok(Some(PolyForm::zero(m)));
    };
    if k == 0 {
        return Ok(None);
    }
    let faces = (0..=m).map(|i| (i, PolyForm::zero(m - 1))).collect();
    solve_with_boundary(m, k - 1, Some(z), &faces, z.poly_degree() + 2 * m as u32 + 2)
}

/// Result of comparing two boundary-free simplices.
#[derive(Debug, Clone)]
pub enum AbelianComparison {
    /// An `(n+1)`-simplex with `d_n = x`, `d_{n+1} = x′` and all other faces zero.
    Homotopic(MCElement),
    /// `∫x − ∫x′` per generator; nonzero, so by Stokes no such simplex exists.
    Separated(Vec<Scalar>),
}

/// Decides whether `x` and `x′` are homotopic rel boundary and produces the
/// certificate: the homotopy `s_n x′ + dF`, where `F` restricts to a relative
/// primitive of `x − x′` on facet `n` and to zero on every other facet.
pub fn homotopy_witness(l: &LInftyAlgebra, x: &MCElement, x2: &MCElement) -> Result<AbelianComparison, IntlError> {
    let px = period_class(l, x)?;
    let py = period_class(l, x2)?;
    let diff: Vec<Scalar> = px.iter().zip(&py).map(|(a, b)| a - b).collect();
    if diff.iter().any(|c| !c.is_zero()) {
        return Ok(AbelianComparison::Separated(diff));
    }
    let n = x.m;
    let mut y = x2.degeneracy(n)?;
    for (g, (a, b)) in x.forms.iter().zip(&x2.forms).enumerate() {
        let z = a - b;
        if z.is_zero() {
            continue;
        }
        let eta = relative_primitive(&z)?
            .ok_or_else(|| IntlError::Gauge("no relative primitive found within the degree bound".into()))?;
        let mut faces: BTreeMap<usize, PolyForm> = (0..=n + 1).map(|i| (i, PolyForm::zero(n))).collect();
        faces.insert(n, eta.clone());
        let f = solve_with_boundary(n + 1, eta.degree().unwrap_or(0), None, &faces, eta.poly_degree() + 2 * n as u32 + 4)?
            .ok_or_else(|| IntlError::Gauge("boundary extension not found within the degree bound".into()))?;
        y.forms[g] = &y.forms[g] + &f.d();
    }
    Ok(AbelianComparison::Homotopic(y))
}
