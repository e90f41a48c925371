#![allow(dead_code)]

use linftykan::linf::{abelian, contractible, heisenberg, lie_algebra, Elem, LInftyAlgebra};
use linftykan::{Scalar, ScalarField};

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Filiform algebra of class 3: `[x₁,x₂] = x₃`, `[x₁,x₃] = x₄`.
pub fn filiform4() -> LInftyAlgebra {
    lie_algebra("n4", ScalarField::rationals(), 4, |i, j| match (i, j) {
        (0, 1) => unit(4, 2),
        (0, 2) => unit(4, 3),
        _ => vec![Scalar::zero(); 4],
    })
    .unwrap()
}

/// `h₃` with the top cocycle as a ternary bracket into a line in degree 1.
pub fn heisenberg_string() -> LInftyAlgebra {
    let mut l = heisenberg();
    let mut s = LInftyAlgebra::new("h3-string", ScalarField::rationals(), vec![3, 1]);
    for (k, v) in l.brackets().map(|(k, v)| (k.to_vec(), v.to_vec())).collect::<Vec<_>>() {
        s.set_bracket(&k, v).unwrap();
    }
    s.set_bracket(&[Elem::new(0, 0), Elem::new(0, 1), Elem::new(0, 2)], vec![Scalar::one()])
        .unwrap();
    l = s;
    l
}

/// `h₃` acting on a two-dimensional `H₁` through `x ↦ E₂₁`, plus a contractible pair
/// in degrees 2 → 1 so that every stage of the filler is exercised.
pub fn heisenberg_module() -> LInftyAlgebra {
    let mut l = LInftyAlgebra::new("h3-module", ScalarField::rationals(), vec![3, 3, 1]);
    l.set_bracket(&[Elem::new(0, 0), Elem::new(0, 1)], unit(3, 2)).unwrap();
    l.set_bracket(&[Elem::new(0, 0), Elem::new(1, 0)], unit(3, 1)).unwrap();
    l.set_bracket(&[Elem::new(2, 0)], unit(3, 2)).unwrap();
    l
}

/// A crossed-module style algebra: `ℓ₁: L₁ → L₀` hits the centre of `h₃`.
pub fn heisenberg_crossed() -> LInftyAlgebra {
    let mut l = LInftyAlgebra::new("h3-crossed", ScalarField::rationals(), vec![3, 1]);
    l.set_bracket(&[Elem::new(0, 0), Elem::new(0, 1)], unit(3, 2)).unwrap();
    l.set_bracket(&[Elem::new(1, 0)], unit(3, 2)).unwrap();
    l
}

pub fn nilpotent_samples() -> Vec<LInftyAlgebra> {
    vec![
        abelian(&[2]),
        abelian(&[0, 1]),
        abelian(&[1, 1, 1]),
        heisenberg(),
        filiform4(),
        contractible(0, 1),
        contractible(1, 1),
        heisenberg_string(),
        heisenberg_module(),
        heisenberg_crossed(),
    ]
}
