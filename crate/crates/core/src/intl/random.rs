//! Random Maurer–Cartan simplices of nilpotent algebras, generator by generator
//! along the lower central series.

use rand::Rng;

use super::{evaluate, IntlError, MCElement};
use crate::forms::{homotopy_operator, PolyForm, PolyMap};
use crate::gradedlin::{extend_basis, Matrix};
use crate::linf::{Elem, LInftyAlgebra};
use crate::scalar::Scalar;

/// Random polynomial `k`-form on `Δ^m` with small integer coefficients.
pub fn random_form<R: Rng>(rng: &mut R, m: usize, k: usize, max_degree: u32) -> PolyForm {
    let mut out = PolyForm::zero(m);
    if k > m {
        return out;
    }
    let masks: Vec<u64> = (0u64..1 << m).filter(|s| s.count_ones() as usize == k).collect();
    for _ in 0..rng.gen_range(1..=4) {
        let mut exps = vec![0u32; m];
        let mut budget = rng.gen_range(0..=max_degree);
        while budget > 0 && m > 0 {
            exps[rng.gen_range(0..m)] += 1;
            budget -= 1;
        }
        let mask = masks[rng.gen_range(0..masks.len())];
        let c = rng.gen_range(-3i64..=3);
        out.add_term(exps, mask, Scalar::from_int(c));
    }
    out
}

/// A basis of each `L_d` adapted to the lower central series, with the level
/// (index of the last series term containing the vector) of every basis vector.
fn filtration_basis(l: &LInftyAlgebra) -> Option<(Vec<Matrix>, Vec<usize>)> {
    let series = l.lower_central_series()?;
    let mut change = Vec::new();
    let mut levels = vec![0; l.total_dim()];
    for d in 0..l.top() {
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        let mut col_levels = Vec::new();
        for (k, term) in series.iter().enumerate().rev() {
            let vecs: Vec<Vec<Scalar>> = term.iter().filter(|v| v.degree == d).map(|v| v.coords.clone()).collect();
            let added = extend_basis(l.dim(d), &cols, &vecs);
            col_levels.extend(std::iter::repeat(k + 1).take(added.len()));
            cols.extend(added);
        }
        for (r, lev) in col_levels.into_iter().enumerate() {
            levels[l.global_index(Elem::new(d, r))] = lev;
        }
        change.push(Matrix::from_columns(l.dim(d), &cols));
    }
    Some((change, levels))
}

/// A random `m`-simplex of a nilpotent algebra: each generator gets a primitive of
/// `φ(δξ)` (coned off at vertex 0) plus a random exact form.
pub fn random_mc<R: Rng>(l: &LInftyAlgebra, m: usize, max_degree: u32, rng: &mut R) -> Result<MCElement, IntlError> {
    let (change, levels) = filtration_basis(l).ok_or(IntlError::NotNilpotent)?;
    if m == 0 {
        return Ok(MCElement::zero(l, 0));
    }
    let adapted = l.change_basis(&change)?;
    let ce = adapted.ce();
    let cone = PolyMap::simplicial(m, m, &vec![0; m + 1])?;
    let mut order: Vec<usize> = (0..ce.len()).collect();
    order.sort_by_key(|&g| levels[g]);
    let mut forms = vec![PolyForm::zero(m); ce.len()];
    for g in order {
        let deg = ce.generator_degree(g);
        let gamma = evaluate(ce.differential(g), &forms, m);
        let mut x = homotopy_operator(&cone, &gamma)?;
        x = &x + &random_form(rng, m, deg - 1, max_degree).d();
        forms[g] = x;
    }
    let mut out = vec![PolyForm::zero(m); ce.len()];
    for (d, p) in change.iter().enumerate() {
        for i in 0..p.rows() {
            let mut f = PolyForm::zero(m);
            for r in 0..p.cols() {
                if !p[(i, r)].is_zero() {
                    f = &f + &forms[l.global_index(Elem::new(d, r))].scale(&p[(i, r)]);
                }
            }
            out[l.global_index(Elem::new(d, i))] = f;
        }
    }
    Ok(MCElement { m, forms: out })
}
