//! Standard examples: Lie algebras, abelian and contractible algebras, the string
//! Lie 2-algebra and the quotient of two string algebras with an irrational slope.

use super::{Elem, LInftyAlgebra, LinfError};
use crate::gradedlin::Matrix;
use crate::scalar::{Scalar, ScalarField};

/// Lie algebra from structure constants `[e_i, e_j] = Σ_k c(i,j,k) e_k` for `i < j`.
pub fn lie_algebra(
    name: &str,
    field: ScalarField,
    dim: usize,
    constants: impl Fn(usize, usize) -> Vec<Scalar>,
) -> Result<LInftyAlgebra, LinfError> {
    let mut l = LInftyAlgebra::new(name, field, vec![dim]);
    for i in 0..dim {
        for j in i + 1..dim {
            l.set_bracket(&[Elem::new(0, i), Elem::new(0, j)], constants(i, j))?;
        }
    }
    Ok(l)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `su(2)` with `[e_i, e_j] = ε_{ijk} e_k`.
pub fn su2() -> LInftyAlgebra {
    let mut l = lie_algebra("su2", ScalarField::rationals(), 3, |i, j| {
        (0..3).map(|k| Scalar::from_int(levi_civita(i, j, k))).collect()
    })
    .expect("valid structure constants");
    l.set_labels(0, vec!["e1".into(), "e2".into(), "e3".into()]);
    l
}

/// Heisenberg algebra `[x, y] = z`.
pub fn heisenberg() -> LInftyAlgebra {
    let mut l = lie_algebra("h3", ScalarField::rationals(), 3, |i, j| {
        if (i, j) == (0, 1) {
            unit(3, 2)
        } else {
            vec![Scalar::zero(); 3]
        }
    })
    .expect("valid structure constants");
    l.set_labels(0, vec!["x".into(), "y".into(), "z".into()]);
    l
}

/// All brackets zero; `dims[d] = dim L_d`.
pub fn abelian(dims: &[usize]) -> LInftyAlgebra {
    LInftyAlgebra::new("abelian", ScalarField::rationals(), dims.to_vec())
}

/// `ℝ^dim` in degrees `degree + 1 → degree` with `ℓ₁ = id` and nothing else.
pub fn contractible(degree: usize, dim: usize) -> LInftyAlgebra {
    let mut dims = vec![0; degree + 2];
    dims[degree] = dim;
    dims[degree + 1] = dim;
    let mut l = LInftyAlgebra::new("contractible", ScalarField::rationals(), dims);
    for i in 0..dim {
        l.set_bracket(&[Elem::new(degree + 1, i)], unit(dim, i))
            .expect("valid unary bracket");
    }
    l
}

/// Constructor record for `str(g) = g ⊕ ℝ` with binary bracket from `g` and ternary
/// bracket `scale · ⟨[X₁,X₂],X₃⟩` for the pairing with Gram matrix `gram`.
#[derive(Debug, Clone)]
pub struct StringLieTwoAlgebra {
    pub lie: LInftyAlgebra,
    pub gram: Matrix,
    pub scale: Scalar,
}

impl StringLieTwoAlgebra {
    /// `g` with the pairing `⟨e_i, e_j⟩ = δ_ij`.
    pub fn with_identity_pairing(lie: LInftyAlgebra, scale: Scalar) -> Self {
        let n = lie.dim(0);
        StringLieTwoAlgebra {
            lie,
            gram: Matrix::identity(n),
            scale,
        }
    }

    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum::<Scalar>() * &self.scale
    }

    fn lie_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        use super::GVec;
        self.lie
            .bracket(&[
                GVec {
                    degree: 0,
                    coords: x.to_vec(),
                },
                GVec {
                    degree: 0,
                    coords: y.to_vec(),
                },
            ])
            .coords
    }

    /// Symmetry and ad-invariance `⟨[x,y],z⟩ = −⟨y,[x,z]⟩` on basis elements.
    pub fn check_pairing(&self) -> Result<(), LinfError> {
        let n = self.lie.dim(0);
        if self.lie.top() != 1 {
            return Err(LinfError::Shape("string construction needs a Lie algebra in degree 0".into()));
        }
        if self.gram.transpose() != self.gram {
            return Err(LinfError::Pairing("symmetric"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (unit(n, x), unit(n, y), unit(n, z));
                    let lhs = self.pairing(&self.lie_bracket(&ex, &ey), &ez);
                    let rhs = -self.pairing(&ey, &self.lie_bracket(&ex, &ez));
                    if lhs != rhs {
                        return Err(LinfError::Pairing("ad-invariant"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<LInftyAlgebra, LinfError> {
        self.check_pairing()?;
        let n = self.lie.dim(0);
        let field = self.lie.field().join(&ScalarField::generated_by([&self.scale]));
        let mut l = LInftyAlgebra::new(format!("str({})", self.lie.name), field, vec![n, 1]);
        for (inputs, out) in self.lie.brackets() {
            l.set_bracket(inputs, out.to_vec())?;
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let v = self.pairing(&self.lie_bracket(&unit(n, a), &unit(n, b)), &unit(n, c));
                    l.set_bracket(&[Elem::new(0, a), Elem::new(0, b), Elem::new(0, c)], vec![v])?;
                }
            }
        }
        l.set_labels(0, (0..n).map(|i| self.lie.label(Elem::new(0, i))).collect());
        l.set_labels(1, vec!["c".into()]);
        Ok(l)
    }
}

/// Quotient of `str(su2) ⊕ str(su2)` by the line `(p, q)ℝ` in degree 1.
///
/// Degree 1 is identified with ℝ through `(x, y) ↦ q·x − p·y`.
pub fn build_end_example(p: &Scalar, q: &Scalar) -> Result<LInftyAlgebra, LinfError> {
    let field = ScalarField::generated_by([p, q]);
    let basis = field.basis();
    let cp = p.coordinates(&basis).expect("generated field");
    let cq = q.coordinates(&basis).expect("generated field");
    let parallel = Matrix::from_columns(
        basis.len(),
        &[
            cp.into_iter().map(Scalar::from_rational).collect(),
            cq.into_iter().map(Scalar::from_rational).collect(),
        ],
    )
    .rank()
        < 2;
    if parallel {
        return Err(LinfError::Dependent);
    }
    let g = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one());
    let mut l = LInftyAlgebra::new(format!("eND({p}, {q})"), field, vec![6, 1]);
    let weights = [q.clone(), -p];
    for copy in 0..2 {
        let off = 3 * copy;
        for (inputs, out) in g.lie.brackets() {
            let shifted: Vec<Elem> = inputs.iter().map(|e| Elem::new(0, e.index + off)).collect();
            let mut v = vec![Scalar::zero(); 6];
            for (k, x) in out.iter().enumerate() {
                v[k + off] = x.clone();
            }
            l.set_bracket(&shifted, v)?;
        }
        for a in 0..3 {
            for b in a + 1..3 {
                for c in b + 1..3 {
                    let v = g.pairing(&g.lie_bracket(&unit(3, a), &unit(3, b)), &unit(3, c));
                    l.set_bracket(
                        &[Elem::new(0, a + off), Elem::new(0, b + off), Elem::new(0, c + off)],
                        vec![&v * &weights[copy]],
                    )?;
                }
            }
        }
    }
    l.set_labels(
        0,
        ["e1", "e2", "e3", "f1", "f2", "f3"].iter().map(|s| s.to_string()).collect(),
    );
    l.set_labels(1, vec!["c".into()]);
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_example_shapes() {
        let l = build_end_example(&Scalar::one(), &Scalar::sqrt(2)).unwrap();
        assert_eq!(l.dim(1), 1);
        assert!(matches!(
            build_end_example(&Scalar::one(), &Scalar::from_int(2)),
            Err(LinfError::Dependent)
        ));
    }

    #[test]
    fn end_example_swap_isomorphism() {
        let a = build_end_example(&Scalar::one(), &Scalar::sqrt(2)).unwrap();
        let b = build_end_example(&Scalar::sqrt(2), &Scalar::one()).unwrap();
        let mut swap = Matrix::zeros(6, 6);
        for i in 0..3 {
            swap[(i + 3, i)] = Scalar::one();
            swap[(i, i + 3)] = Scalar::one();
        }
        let neg = Matrix::identity(1).scale(&Scalar::from_int(-1));
        assert!(a.is_isomorphism(&b, &[swap.clone(), neg]));
        assert!(!a.is_isomorphism(&b, &[swap, Matrix::identity(1)]));
    }
}
