//! Horn filling for nilpotent algebras, one Postnikov stage at a time.
//!
//! In each degree `d` the basis of `L_d` is split as `B_d ⊕ H_d ⊕ C_d`: boundaries
//! `B_d = ℓ₁(C_{d+1})` (basis chosen as the images of the `C_{d+1}` basis), a
//! complement `H_d` of the boundaries inside the cycles, and a complement `C_d`
//! of the cycles. Generator forms are then produced in the order
//!
//! * `H₀`: integrate the horn to gauges, extend the gauge, differentiate back;
//! * `H_d`, `d ≥ 1`: twist by the gauge so that the equation reads `dβ′ = γ′`,
//!   extend with prescribed differential, untwist;
//! * `B_d`: free extension;
//! * `C_{d+1}`: forced by `δξ^b = ξ^c + (terms in earlier generators)`.

use std::collections::BTreeMap;
use std::ops::Range;

use num::bigint::BigInt;
use num::rational::BigRational;

use super::gauge::{integrate_connection, LieData};
use super::{evaluate, validate_with, IntlError, MCElement};
use crate::forms::{horn_extend_form, FormError, HornFamily, PolyForm, PolyMap};
use crate::gradedlin::{extend_basis, standard_basis, Matrix};
use crate::linf::{Elem, LInftyAlgebra};
use crate::scalar::Scalar;

/// Degreewise basis `[B_d | H_d | C_d]` adapted to `ℓ₁`.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    /// Columns are the new basis vectors in the original coordinates.
    pub change: Vec<Matrix>,
    pub inverse: Vec<Matrix>,
    /// `(|B_d|, |H_d|, |C_d|)`.
    pub blocks: Vec<(usize, usize, usize)>,
}

impl AdaptedBasis {
    pub fn boundary_range(&self, d: usize) -> Range<usize> {
        0..self.blocks[d].0
    }

    pub fn homology_range(&self, d: usize) -> Range<usize> {
        let (b, h, _) = self.blocks[d];
        b..b + h
    }

    pub fn complement_range(&self, d: usize) -> Range<usize> {
        let (b, h, c) = self.blocks[d];
        b + h..b + h + c
    }

    /// The `H_d` basis vectors and the matrix reading off their coordinates.
    pub fn homology_block(&self, d: usize) -> (Vec<Vec<Scalar>>, Matrix) {
        let r = self.homology_range(d);
        let vecs = r.clone().map(|k| self.change[d].column(k)).collect();
        let n = self.inverse[d].cols();
        let rows = r.map(|k| self.inverse[d].row(k).to_vec()).collect::<Vec<_>>();
        let coords = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows) };
        (vecs, coords)
    }
}

/// Splits every `L_d` along `ℓ₁`, choosing complements by leftmost pivots.
pub fn adapted_basis(l: &LInftyAlgebra) -> AdaptedBasis {
    let top = l.top();
    let complements: Vec<Vec<Vec<Scalar>>> = (0..top)
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            let kernel = l.differential(d).kernel();
            extend_basis(l.dim(d), &kernel, &standard_basis(l.dim(d)))
        })
        .collect();
    let mut change = Vec::with_capacity(top);
    let mut blocks = Vec::with_capacity(top);
    for d in 0..top {
        let n = l.dim(d);
        let boundaries: Vec<Vec<Scalar>> = if d + 1 < top {
            let del = l.differential(d + 1);
            complements[d + 1].iter().map(|c| del.apply(c)).collect()
        } else {
            Vec::new()
        };
        let cycles = if d == 0 { standard_basis(n) } else { l.differential(d).kernel() };
        let homology = extend_basis(n, &boundaries, &cycles);
        blocks.push((boundaries.len(), homology.len(), complements[d].len()));
        let mut cols = boundaries;
        cols.extend(homology);
        cols.extend(complements[d].iter().cloned());
        change.push(Matrix::from_columns(n, &cols));
    }
    let inverse = change
        .iter()
        .map(|p| p.inverse().expect("adapted basis spans each degree"))
        .collect();
    AdaptedBasis { change, inverse, blocks }
}

/// Maurer–Cartan elements on the facets `d_i Δ^m`, `i ≠ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horn {
    pub m: usize,
    pub j: usize,
    pub facets: BTreeMap<usize, MCElement>,
}

impl Horn {
    pub fn restrict(x: &MCElement, j: usize) -> Result<Horn, IntlError> {
        let facets = (0..=x.m)
            .filter(|&i| i != j)
            .map(|i| Ok((i, x.face(i)?)))
            .collect::<Result<_, IntlError>>()?;
        Ok(Horn { m: x.m, j, facets })
    }
}

fn facet_family(m: usize, j: usize, facets: &BTreeMap<usize, Vec<PolyForm>>, g: usize) -> HornFamily {
    HornFamily {
        m,
        j,
        facets: facets.iter().map(|(&i, f)| (i, f[g].clone())).collect(),
    }
}

fn recoordinate(forms: &[PolyForm], maps: &[Matrix], l: &LInftyAlgebra, m: usize) -> Vec<PolyForm> {
    let mut out = vec![PolyForm::zero(m); forms.len()];
    for (d, p) in maps.iter().enumerate() {
        for r in 0..p.rows() {
            let mut f = PolyForm::zero(m);
            for i in 0..p.cols() {
                let c = &p[(r, i)];
                if !c.is_zero() {
                    f = &f + &forms[l.global_index(Elem::new(d, i))].scale(c);
                }
            }
            out[l.global_index(Elem::new(d, r))] = f;
        }
    }
    out
}

/// Square matrix of 0-forms.
type FormMatrix = Vec<Vec<PolyForm>>;

fn mat_mul(a: &FormMatrix, b: &FormMatrix, m: usize) -> FormMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut s = PolyForm::zero(m);
                    for (x, row) in a[i].iter().zip(b) {
                        if !x.is_zero() && !row[k].is_zero() {
                            s = &s + &x.wedge(&row[k]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// `exp(Σ_a u_a ρ_a)`; the series is finite because the `ρ_a` are jointly nilpotent.
fn exp_action(rho: &[Matrix], u: &[PolyForm], n: usize, m: usize) -> FormMatrix {
    let mut x: FormMatrix = vec![vec![PolyForm::zero(m); n]; n];
    for (r, ua) in rho.iter().zip(u) {
        for (i, row) in x.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate() {
                if !r[(i, k)].is_zero() {
                    *e = &*e + &ua.scale(&r[(i, k)]);
                }
            }
        }
    }
    let mut total: FormMatrix = (0..n)
        .map(|i| (0..n).map(|k| if i == k { PolyForm::one(m) } else { PolyForm::zero(m) }).collect())
        .collect();
    let mut power = total.clone();
    for k in 1..=n {
        power = mat_mul(&power, &x, m);
        if power.iter().flatten().all(PolyForm::is_zero) {
            break;
        }
        let c = Scalar::from_rational(BigRational::new(1.into(), (1..=k).map(BigInt::from).product()));
        for (trow, prow) in total.iter_mut().zip(&power) {
            for (t, p) in trow.iter_mut().zip(prow) {
                *t = &*t + &p.scale(&c);
            }
        }
    }
    total
}

fn apply(f: &FormMatrix, v: &[PolyForm], m: usize) -> Vec<PolyForm> {
    f.iter()
        .map(|row| {
            let mut s = PolyForm::zero(m);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    s = &s + &a.wedge(b);
                }
            }
            s
        })
        .collect()
}

fn pull_matrix(f: &FormMatrix, map: &PolyMap) -> Result<FormMatrix, FormError> {
    f.iter()
        .map(|row| row.iter().map(|e| e.pullback(map)).collect())
        .collect()
}

fn negate(u: &[PolyForm]) -> Vec<PolyForm> {
    u.iter().map(|f| -f).collect()
}

/// Position of vertex `j` inside facet `i`.
fn vertex_in_facet(j: usize, i: usize) -> usize {
    if j < i {
        j
    } else {
        j - 1
    }
}

/// Fills a horn of Maurer–Cartan elements of a nilpotent algebra. With `pin`, the
/// filler depends on the horn through a construction that sends the horn of `pin`
/// to `pin` itself.
pub fn fill_horn(l: &LInftyAlgebra, horn: &Horn, pin: Option<&MCElement>) -> Result<MCElement, IntlError> {
    if !l.is_nilpotent().0 {
        return Err(IntlError::NotNilpotent);
    }
    let (m, j) = (horn.m, horn.j);
    if m == 0 || j > m {
        return Err(IntlError::Form(FormError::Index { index: j, m }));
    }
    let ce = l.ce();
    for i in (0..=m).filter(|&i| i != j) {
        let f = horn.facets.get(&i).ok_or(IntlError::MissingFacet { m, j, facet: i })?;
        if f.m != m - 1 {
            return Err(IntlError::Simplex { expected: m - 1, found: f.m });
        }
        let report = validate_with(&ce, f).map_err(|e| IntlError::InvalidFacet { facet: i, detail: e.to_string() })?;
        if !report.holds {
            return Err(IntlError::InvalidFacet { facet: i, detail: report.to_string() });
        }
    }
    if let Some(&extra) = horn.facets.keys().find(|&&i| i == j || i > m) {
        return Err(IntlError::Form(FormError::Index { index: extra, m }));
    }
    if m >= 2 {
        for (&i, fi) in &horn.facets {
            for (&k, fk) in horn.facets.range(i + 1..) {
                if fi.face(k - 1)? != fk.face(i)? {
                    return Err(IntlError::Incompatible(i, k));
                }
            }
        }
    }
    if let Some(p) = pin {
        let report = validate_with(&ce, p)?;
        if p.m != m || !report.holds {
            return Err(IntlError::InvalidFacet { facet: m + 1, detail: format!("pin: {report}") });
        }
    }

    let ab = adapted_basis(l);
    let adapted = l.change_basis(&ab.change)?;
    let ace = adapted.ce();
    let g = |d: usize, r: usize| adapted.global_index(Elem::new(d, r));
    let facets: BTreeMap<usize, Vec<PolyForm>> = horn
        .facets
        .iter()
        .map(|(&i, f)| (i, recoordinate(&f.forms, &ab.inverse, l, m - 1)))
        .collect();
    let pin_forms = pin.map(|p| recoordinate(&p.forms, &ab.inverse, l, m));
    let mut cur = vec![PolyForm::zero(m); l.total_dim()];

    // Gauge data for H₀, shared by every twisted stage.
    let h0 = if l.top() > 0 { ab.homology_range(0) } else { 0..0 };
    let lie = {
        let n0 = l.dim(0);
        let basis: Vec<Vec<Scalar>> = h0.clone().map(|r| standard_basis(n0)[r].clone()).collect();
        let rows: Vec<Vec<Scalar>> = h0.clone().map(|r| standard_basis(n0)[r].clone()).collect();
        let coords = if rows.is_empty() { Matrix::zeros(0, n0) } else { Matrix::from_rows(rows) };
        LieData::from_complement(&adapted, &basis, &coords)
    };
    let mut gauge = vec![PolyForm::zero(m); h0.len()];
    let mut pin_gauge: Option<Vec<PolyForm>> = None;

    for d in 0..l.top() {
        let hr = ab.homology_range(d);
        if d == 0 && !hr.is_empty() {
            let mut facet_gauges: BTreeMap<usize, Vec<PolyForm>> = BTreeMap::new();
            for (&i, f) in &facets {
                let alpha: Vec<PolyForm> = hr.clone().map(|r| f[g(0, r)].clone()).collect();
                facet_gauges.insert(i, integrate_connection(&lie, &alpha, m - 1, vertex_in_facet(j, i))?);
            }
            if let Some(p) = &pin_forms {
                let alpha: Vec<PolyForm> = hr.clone().map(|r| p[g(0, r)].clone()).collect();
                pin_gauge = Some(integrate_connection(&lie, &alpha, m, j)?);
            }
            for a in 0..hr.len() {
                let family = HornFamily::new(m, j, facet_gauges.iter().map(|(&i, u)| (i, u[a].clone())).collect())?;
                gauge[a] = horn_extend_form(&family, None, pin_gauge.as_ref().map(|u| &u[a]))?;
            }
            for (a, f) in lie.connection_of(&gauge).into_iter().enumerate() {
                cur[g(0, hr.start + a)] = f;
            }
        } else if !hr.is_empty() {
            // ρ_a: action of the H₀ basis on H_d, read in H_d coordinates.
            let rho: Vec<Matrix> = h0
                .clone()
                .map(|a| {
                    let mut r = Matrix::zeros(hr.len(), hr.len());
                    for (col, h) in hr.clone().enumerate() {
                        if let Some(out) = adapted.bracket_basis(&[Elem::new(0, a), Elem::new(d, h)]) {
                            for (row, k) in hr.clone().enumerate() {
                                r[(row, col)] = out[k].clone();
                            }
                        }
                    }
                    r
                })
                .collect();
            let n = hr.len();
            let f = exp_action(&rho, &gauge, n, m);
            let f_inv = exp_action(&rho, &negate(&gauge), n, m);
            let gamma: Vec<PolyForm> = hr.clone().map(|h| evaluate(ace.differential(g(d, h)), &cur, m)).collect();
            let gamma_t = apply(&f, &gamma, m);
            let mut twisted: BTreeMap<usize, Vec<PolyForm>> = BTreeMap::new();
            for (&i, x) in &facets {
                let fi = pull_matrix(&f, &PolyMap::face(m, i)?)?;
                let beta: Vec<PolyForm> = hr.clone().map(|h| x[g(d, h)].clone()).collect();
                twisted.insert(i, apply(&fi, &beta, m - 1));
            }
            let pin_t = match (&pin_forms, &pin_gauge) {
                (Some(p), Some(u)) => {
                    let beta: Vec<PolyForm> = hr.clone().map(|h| p[g(d, h)].clone()).collect();
                    Some(apply(&exp_action(&rho, u, n, m), &beta, m))
                }
                (Some(p), None) => Some(hr.clone().map(|h| p[g(d, h)].clone()).collect()),
                _ => None,
            };
            let mut filled = Vec::with_capacity(n);
            for k in 0..n {
                let family = HornFamily::new(m, j, twisted.iter().map(|(&i, b)| (i, b[k].clone())).collect())?;
                filled.push(horn_extend_form(&family, Some(&gamma_t[k]), pin_t.as_ref().map(|p| &p[k]))?);
            }
            for (k, b) in apply(&f_inv, &filled, m).into_iter().enumerate() {
                cur[g(d, hr.start + k)] = b;
            }
        }
        for b in ab.boundary_range(d) {
            let gb = g(d, b);
            let family = facet_family(m, j, &facets, gb);
            cur[gb] = horn_extend_form(&family, None, pin_forms.as_ref().map(|p| &p[gb]))?;
        }
        if d + 1 < l.top() {
            for (k, c) in ab.complement_range(d + 1).enumerate() {
                let gb = g(d, k);
                cur[g(d + 1, c)] = &cur[gb].d() - &evaluate(ace.differential(gb), &cur, m);
            }
        }
    }

    let out = MCElement {
        m,
        forms: recoordinate(&cur, &ab.change, l, m),
    };
    let report = validate_with(&ce, &out)?;
    if !report.holds {
        return Err(IntlError::Gauge(format!("filler failed validation: {report}")));
    }
    Ok(out)
}
