//! Extension of forms from a horn `Λ[m,j] ⊂ Δ^m` to the whole simplex by
//! inclusion–exclusion over the affine retractions `p_I` (`I ⊋ {j}`, vertices of
//! `I` collapse to `j`), optionally with a prescribed differential.

use std::collections::BTreeMap;

use super::{FormError, PolyForm, PolyMap};

/// Forms on the facets `d_i Δ^m`, `i ≠ j`, each written on `Δ^{m−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornFamily {
    pub m: usize,
    pub j: usize,
    pub facets: BTreeMap<usize, PolyForm>,
}

impl HornFamily {
    /// Checks presence, dimensions and agreement on codimension-2 faces.
    pub fn new(m: usize, j: usize, facets: BTreeMap<usize, PolyForm>) -> Result<Self, FormError> {
        if m == 0 || j > m {
            return Err(FormError::Index { index: j, m });
        }
        for i in (0..=m).filter(|&i| i != j) {
            let f = facets.get(&i).ok_or(FormError::MissingFacet { m, j, facet: i })?;
            if f.dim() != m - 1 {
                return Err(FormError::Dimension {
                    expected: m - 1,
                    found: f.dim(),
                });
            }
        }
        if let Some(&extra) = facets.keys().find(|&&i| i == j || i > m) {
            return Err(FormError::Index { index: extra, m });
        }
        let family = HornFamily { m, j, facets };
        family.check_compatible()?;
        Ok(family)
    }

    /// Restriction of a form on `Δ^m` to the horn.
    pub fn restrict(form: &PolyForm, j: usize) -> Result<Self, FormError> {
        let m = form.dim();
        let mut facets = BTreeMap::new();
        for i in (0..=m).filter(|&i| i != j) {
            facets.insert(i, form.pullback(&PolyMap::face(m, i)?)?);
        }
        Ok(HornFamily { m, j, facets })
    }

    fn check_compatible(&self) -> Result<(), FormError> {
        if self.m < 2 {
            return Ok(());
        }
        // d_i d_k = d_{k−1} d_i for i < k
        for (&i, fi) in &self.facets {
            for (&k, fk) in self.facets.range(i + 1..) {
                let a = fi.pullback(&PolyMap::face(self.m - 1, k - 1)?)?;
                let b = fk.pullback(&PolyMap::face(self.m - 1, i)?)?;
                if a != b {
                    return Err(FormError::Incompatible(i, k));
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.facets.values().all(PolyForm::is_zero)
    }
}

fn subsets(m: usize, j: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << (m + 1)).filter_map(move |mask| {
        if mask & (1 << j) == 0 || mask.count_ones() < 2 {
            return None;
        }
        Some((0..=m).filter(|&v| mask & (1 << v) != 0).collect())
    })
}

/// The retraction `p_I: Δ^m → Δ^m` and its factorization through a horn facet:
/// returns `(k, p_I as a self-map, p_I as a map to facet k)` with `k = min(I ∖ {j})`.
pub fn horn_projection(m: usize, j: usize, set: &[usize]) -> Result<(usize, PolyMap, PolyMap), FormError> {
    let k = *set
        .iter()
        .filter(|&&v| v != j)
        .min()
        .ok_or(FormError::Invalid("projection set must contain a vertex other than j".into()))?;
    let image: Vec<usize> = (0..=m).map(|v| if set.contains(&v) { j } else { v }).collect();
    let to_facet: Vec<usize> = image.iter().map(|&w| if w < k { w } else { w - 1 }).collect();
    Ok((
        k,
        PolyMap::simplicial(m, m, &image)?,
        PolyMap::simplicial(m, m - 1, &to_facet)?,
    ))
}

/// `H(x, s) = s·x + (1 − s)·p(x)` on `Δ^m × [0,1]`, with `s` the last coordinate.
fn straight_homotopy(p: &PolyMap) -> Result<PolyMap, FormError> {
    let m = p.target_dim();
    let s = PolyForm::coord(m + 1, m + 1);
    let one_minus_s = &PolyForm::one(m + 1) - &s;
    PolyMap::new(
        m + 1,
        (1..=m)
            .map(|i| &s.wedge(&PolyForm::coord(m + 1, i)) + &one_minus_s.wedge(&p.components()[i - 1].with_extra_coordinate()))
            .collect(),
    )
}

/// `K(ω) = ∫₀¹ ι_{∂s} H*ω ds` for the straight-line homotopy
/// `H(x, s) = s·x + (1 − s)·p(x)` from a self-map `p` of `Δ^m` to the identity,
/// so that `dK + Kd = id − p*`.
pub fn homotopy_operator(p: &PolyMap, form: &PolyForm) -> Result<PolyForm, FormError> {
    let m = p.target_dim();
    if p.source_dim() != m || form.dim() != m {
        return Err(FormError::Dimension {
            expected: m,
            found: form.dim(),
        });
    }
    let h = straight_homotopy(p)?;
    let mut field = vec![PolyForm::zero(m + 1); m + 1];
    field[m] = PolyForm::one(m + 1);
    form.pullback(&h)?.contract(&field).s_integral()
}

fn extend(family: &HornFamily, beta: Option<&PolyForm>) -> Result<PolyForm, FormError> {
    let (m, j) = (family.m, family.j);
    let mut out: Option<PolyForm> = None;
    for set in subsets(m, j) {
        let (k, p, to_facet) = horn_projection(m, j, &set)?;
        let mut term = family.facets[&k].pullback(&to_facet)?;
        if let Some(b) = beta {
            term = &term + &homotopy_operator(&p, b)?;
        }
        if set.len() % 2 == 1 {
            term = -term;
        }
        out = Some(match out {
            None => term,
            Some(acc) => &acc + &term,
        });
    }
    Ok(out.unwrap_or_else(|| PolyForm::zero(m)))
}

/// Extends a horn family to `Δ^m`. With `beta`, the extension satisfies
/// `d ᾱ = beta` (requires `beta` closed and `d α = beta` on every facet). With
/// `pin`, the construction is shifted so that the restriction of `pin` (and, if
/// `beta` is given, `d pin`) is sent exactly to `pin`.
pub fn horn_extend_form(
    family: &HornFamily,
    beta: Option<&PolyForm>,
    pin: Option<&PolyForm>,
) -> Result<PolyForm, FormError> {
    let m = family.m;
    if let Some(b) = beta {
        if b.dim() != m {
            return Err(FormError::Dimension {
                expected: m,
                found: b.dim(),
            });
        }
        if !b.d().is_zero() {
            return Err(FormError::NotClosed);
        }
        for (&i, f) in &family.facets {
            if f.d() != b.pullback(&PolyMap::face(m, i)?)? {
                return Err(FormError::Mismatch(i));
            }
        }
    }
    let base = extend(family, beta)?;
    let Some(pin) = pin else { return Ok(base) };
    if pin.dim() != m {
        return Err(FormError::Dimension {
            expected: m,
            found: pin.dim(),
        });
    }
    let pin_family = HornFamily::restrict(pin, family.j)?;
    let pin_beta = beta.map(|_| pin.d());
    let pin_base = extend(&pin_family, pin_beta.as_ref())?;
    Ok(&(&base + pin) - &pin_base)
}

/// `∫₀¹ p_s* ι_v ω ds` with `p_s = s·id + (1 − s)·p` applied at fixed `s` and
/// `v(x) = x − p(x)`. It equals `∫₀¹ s · ι_{∂s}H*ω ds`, so it is not a homotopy
/// operator; kept for comparison in tests.
#[doc(hidden)]
pub fn literal_flow_term(p: &PolyMap, form: &PolyForm) -> Result<PolyForm, FormError> {
    let m = p.target_dim();
    let v: Vec<PolyForm> = (1..=m)
        .map(|i| &PolyForm::coord(m, i) - &p.components()[i - 1])
        .collect();
    let pulled = form.contract(&v).pullback(&straight_homotopy(p)?)?;
    let ds = 1u64 << m;
    let mut fixed_s = PolyForm::zero(m + 1);
    for ((e, s), c) in pulled.terms() {
        if s & ds == 0 {
            fixed_s.add_term(e.clone(), *s, c.clone());
        }
    }
    fixed_s.s_integral()
}
