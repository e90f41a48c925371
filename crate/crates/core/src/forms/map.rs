use std::collections::HashMap;

use super::{FormError, PolyForm};
use crate::scalar::Scalar;

/// Polynomial map between affine coordinate spaces, given by the target
/// coordinates `t₁…t_n` as 0-forms on the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    source_dim: usize,
    components: Vec<PolyForm>,
}

impl PolyMap {
    pub fn new(source_dim: usize, components: Vec<PolyForm>) -> Result<Self, FormError> {
        for c in &components {
            if c.dim() != source_dim {
                return Err(FormError::Dimension {
                    expected: source_dim,
                    found: c.dim(),
                });
            }
            if !c.is_homogeneous_of(0) {
                return Err(FormError::Degree {
                    expected: 0,
                    found: c.degree().unwrap_or(1),
                });
            }
        }
        Ok(PolyMap {
            source_dim,
            components,
        })
    }

    pub fn identity(m: usize) -> Self {
        PolyMap {
            source_dim: m,
            components: (1..=m).map(|i| PolyForm::coord(m, i)).collect(),
        }
    }

    /// Affine map `Δ^src → Δ^tgt` sending vertex `k` to the point with barycentric
    /// coordinates `images[k]` (length `tgt + 1`).
    pub fn affine(src: usize, tgt: usize, images: &[Vec<Scalar>]) -> Result<Self, FormError> {
        if images.len() != src + 1 {
            return Err(FormError::Dimension {
                expected: src + 1,
                found: images.len(),
            });
        }
        let mut components = Vec::with_capacity(tgt);
        for i in 1..=tgt {
            let mut c = PolyForm::zero(src);
            for (k, img) in images.iter().enumerate() {
                if img.len() != tgt + 1 {
                    return Err(FormError::Dimension {
                        expected: tgt + 1,
                        found: img.len(),
                    });
                }
                if !img[i].is_zero() {
                    c = &c + &PolyForm::coord(src, k).scale(&img[i]);
                }
            }
            components.push(c);
        }
        Ok(PolyMap {
            source_dim: src,
            components,
        })
    }

    /// Simplicial map `Δ^src → Δ^tgt` given on vertices.
    pub fn simplicial(src: usize, tgt: usize, vertices: &[usize]) -> Result<Self, FormError> {
        let images: Vec<Vec<Scalar>> = vertices
            .iter()
            .map(|&v| {
                if v > tgt {
                    return Err(FormError::Index { index: v, m: tgt });
                }
                let mut e = vec![Scalar::zero(); tgt + 1];
                e[v] = Scalar::one();
                Ok(e)
            })
            .collect::<Result<_, _>>()?;
        Self::affine(src, tgt, &images)
    }

    /// Coface `d^i: Δ^{m−1} → Δ^m` skipping vertex `i`.
    pub fn face(m: usize, i: usize) -> Result<Self, FormError> {
        if i > m || m == 0 {
            return Err(FormError::Index { index: i, m });
        }
        let v: Vec<usize> = (0..m).map(|k| if k < i { k } else { k + 1 }).collect();
        Self::simplicial(m - 1, m, &v)
    }

    /// Codegeneracy `s^i: Δ^{m+1} → Δ^m` repeating vertex `i`.
    pub fn degeneracy(m: usize, i: usize) -> Result<Self, FormError> {
        if i > m {
            return Err(FormError::Index { index: i, m });
        }
        let v: Vec<usize> = (0..m + 2).map(|k| if k <= i { k } else { k - 1 }).collect();
        Self::simplicial(m + 1, m, &v)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[PolyForm] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PolyMap) -> Result<PolyMap, FormError> {
        let components = next
            .components
            .iter()
            .map(|c| self.pull(c))
            .collect::<Result<_, _>>()?;
        Ok(PolyMap {
            source_dim: self.source_dim,
            components,
        })
    }

    pub(super) fn pull(&self, form: &PolyForm) -> Result<PolyForm, FormError> {
        let n = self.target_dim();
        if form.dim() != n {
            return Err(FormError::Dimension {
                expected: n,
                found: form.dim(),
            });
        }
        let m = self.source_dim;
        let diffs: Vec<PolyForm> = self.components.iter().map(PolyForm::d).collect();
        let mut powers: HashMap<(usize, u32), PolyForm> = HashMap::new();
        let mut out = PolyForm::zero(m);
        for ((e, s), c) in form.terms() {
            let mut term = PolyForm::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let p = power(&mut powers, &self.components, i, k);
                    term = term.wedge(&p);
                }
            }
            for (i, diff) in diffs.iter().enumerate() {
                if s & (1 << i) != 0 {
                    term = term.wedge(diff);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn power(cache: &mut HashMap<(usize, u32), PolyForm>, comps: &[PolyForm], i: usize, k: u32) -> PolyForm {
    if let Some(p) = cache.get(&(i, k)) {
        return p.clone();
    }
    let p = if k == 1 {
        comps[i].clone()
    } else {
        power(cache, comps, i, k - 1).wedge(&comps[i])
    };
    cache.insert((i, k), p.clone());
    p
}
