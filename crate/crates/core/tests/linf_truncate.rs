use linftykan::gradedlin::Matrix;
use linftykan::linf::{
    abelian, contractible, heisenberg, su2, truncate_linf, Elem, LInftyAlgebra, StringLieTwoAlgebra,
    TruncationMode,
};
use linftykan::{Scalar, ScalarField};

/// A three-term algebra with nonzero differentials in both spots and a few brackets
/// that keep δ² = 0: an abelian ideal acted on by a one-dimensional Lie algebra.
fn three_term() -> LInftyAlgebra {
    // L0 = ⟨a, x⟩, L1 = ⟨y, w⟩, L2 = ⟨z⟩; ∂y = x, ∂z = w; a acts by scaling x, y, w, z.
    let mut l = LInftyAlgebra::new("t3", ScalarField::rationals(), vec![2, 2, 1]);
    let one = Scalar::one;
    let zero = Scalar::zero;
    l.set_bracket(&[Elem::new(1, 0)], vec![zero(), one()]).unwrap();
    l.set_bracket(&[Elem::new(2, 0)], vec![zero(), one()]).unwrap();
    l.set_bracket(&[Elem::new(0, 0), Elem::new(0, 1)], vec![zero(), one()]).unwrap();
    l.set_bracket(&[Elem::new(0, 0), Elem::new(1, 0)], vec![one(), zero()]).unwrap();
    l.set_bracket(&[Elem::new(0, 0), Elem::new(1, 1)], vec![zero(), one()]).unwrap();
    l.set_bracket(&[Elem::new(0, 0), Elem::new(2, 0)], vec![one()]).unwrap();
    l
}

fn samples() -> Vec<LInftyAlgebra> {
    vec![
        su2(),
        heisenberg(),
        abelian(&[2, 1]),
        contractible(0, 2),
        contractible(1, 1),
        StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap(),
        three_term(),
    ]
}

#[test]
fn sample_algebras_are_valid() {
    for l in samples() {
        assert!(l.ce_square_zero().holds, "{}", l.name);
    }
}

#[test]
fn truncation_preserves_axioms_and_homology() {
    for l in samples() {
        let h = l.homology_dims();
        for n in 0..=l.top() {
            for mode in [TruncationMode::AtMost, TruncationMode::Below] {
                let t = truncate_linf(&l, n, mode).unwrap();
                assert!(t.algebra.ce_square_zero().holds, "{} τ{mode}{n}", l.name);
                let ht = t.algebra.homology_dims();
                for d in 0..l.top() {
                    let keep = match mode {
                        TruncationMode::AtMost => d <= n,
                        TruncationMode::Below => d < n,
                    };
                    let expected = if keep { h[d] } else { 0 };
                    assert_eq!(ht.get(d).copied().unwrap_or(0), expected, "{} τ{mode}{n} H{d}", l.name);
                }
            }
        }
    }
}

#[test]
fn tower_maps_compose_to_projection() {
    for l in samples() {
        for n in 0..l.top() {
            let below_next = truncate_linf(&l, n + 1, TruncationMode::Below).unwrap();
            let at_most = truncate_linf(&l, n, TruncationMode::AtMost).unwrap();
            let below = truncate_linf(&l, n, TruncationMode::Below).unwrap();
            let first = below_next.map_to(&at_most);
            let second = at_most.map_to(&below);
            for d in 0..l.top() {
                let composite = second[d].mul(&first[d]).mul(&below_next.projection[d]);
                assert_eq!(composite, below.projection[d], "{} n={n} d={d}", l.name);
            }
        }
    }
}

#[test]
fn truncation_examples() {
    let s = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap();
    let t = truncate_linf(&s, 0, TruncationMode::AtMost).unwrap().algebra;
    assert!(t.is_isomorphism(&su2(), &[Matrix::identity(3)]));
    let g = su2();
    let t = truncate_linf(&g, 1, TruncationMode::Below).unwrap().algebra;
    assert_eq!(t.dims(), g.dims());
    assert!(t.is_isomorphism(&g, &[Matrix::identity(3)]));
    let t = truncate_linf(&g, 3, TruncationMode::AtMost).unwrap().algebra;
    assert!(t.is_isomorphism(&g, &[Matrix::identity(3)]));
}

#[test]
fn nilpotency() {
    assert_eq!(abelian(&[2]).is_nilpotent(), (true, Some(1)));
    assert_eq!(heisenberg().is_nilpotent(), (true, Some(2)));
    assert_eq!(su2().is_nilpotent(), (false, None));
    // The series includes ℓ₁: L ⊃ L₀ ⊃ 0.
    assert_eq!(contractible(0, 1).is_nilpotent(), (true, Some(2)));
}
