//! Chevalley–Eilenberg conformance: sign conventions against Lie algebras, the
//! string Lie 2-algebra and randomly generated strict-Jacobiator Lie 2-algebras.

use linftykan::gradedlin::Matrix;
use linftykan::linf::{
    abelian, build_end_example, contractible, heisenberg, su2, CEAlgebra, Elem, GVec, LInftyAlgebra,
    StringLieTwoAlgebra,
};
use linftykan::{Scalar, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gen(ce: &CEAlgebra, e: Elem) -> usize {
    (0..ce.len()).find(|&g| ce.generator_elem(g) == e).unwrap()
}

#[test]
fn lie_algebra_ce_is_half_the_bracket() {
    // dξ^a = ½ Σ_{ij} c^a_{ij} ξ^i ξ^j = Σ_{i<j} c^a_{ij} ξ^i ξ^j
    let l = su2();
    let ce = l.ce();
    for a in 0..3 {
        let d = ce.differential(gen(&ce, Elem::new(0, a)));
        assert_eq!(d.terms.len(), 1);
        let (i, j) = ((a + 1) % 3, (a + 2) % 3);
        let key = if i < j { vec![i, j] } else { vec![j, i] };
        let expected = if i < j { 1 } else { -1 };
        assert_eq!(d.terms[&key], Scalar::from_int(expected), "generator {a}");
    }
    assert!(l.ce_square_zero().holds);
}

#[test]
fn string_ce_has_one_sixth_ternary_term() {
    let s = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap();
    let ce = s.ce();
    let beta = gen(&ce, Elem::new(1, 0));
    assert_eq!(ce.generator_degree(beta), 2);
    // (1/6) Σ_{ijk} ⟨[e_i,e_j],e_k⟩ ξ^iξ^jξ^k collapses to ξ^1ξ^2ξ^3.
    let d = ce.differential(beta);
    assert_eq!(d.terms.len(), 1);
    assert_eq!(d.terms[&vec![0, 1, 2]], Scalar::one());
    assert!(s.ce_square_zero().holds);
}

#[test]
fn degree_one_generators_anticommute() {
    let ce = heisenberg().ce();
    assert_eq!(ce.multiply_monomials(&[0], &[0]), None);
    assert_eq!(ce.multiply_monomials(&[1], &[0]), Some((vec![0, 1], true)));
    let s = abelian(&[1, 1]).ce();
    assert_eq!(s.multiply_monomials(&[1], &[1]), Some((vec![1, 1], false)));
}

#[test]
fn jacobi_failure_is_detected() {
    // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1: Jacobiator is nonzero.
    let mut l = LInftyAlgebra::new("bad", ScalarField::rationals(), vec![3]);
    let e = |i| Elem::new(0, i);
    let v = |xs: [i64; 3]| xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
    l.set_bracket(&[e(0), e(1)], v([0, 0, 1])).unwrap();
    l.set_bracket(&[e(1), e(2)], v([1, 0, 0])).unwrap();
    l.set_bracket(&[e(0), e(2)], v([1, 0, 0])).unwrap();
    let r = l.ce_square_zero();
    assert!(!r.holds);
    assert!(!r.violations.is_empty());
}

#[test]
fn standard_examples_satisfy_axioms() {
    for l in [
        su2(),
        heisenberg(),
        abelian(&[2, 1]),
        contractible(0, 2),
        contractible(1, 1),
        build_end_example(&Scalar::one(), &Scalar::sqrt(2)).unwrap(),
    ] {
        assert!(l.ce_square_zero().holds, "{}", l.name);
    }
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(rng.gen_range(-3..=3))
}

fn invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_int_rows(&refs);
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn gv(degree: usize, coords: Vec<Scalar>) -> GVec {
    GVec { degree, coords }
}

/// Two-term algebra with invertible `ℓ₁`, arbitrary antisymmetric `ℓ₂` on degree 0,
/// mixed `ℓ₂(x,h) = ℓ₁⁻¹ℓ₂(x,ℓ₁h)` and `ℓ₃ = ℓ₁⁻¹` of minus the Jacobiator.
fn random_two_term(seed: u64, n: usize, negate_unary: bool) -> LInftyAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = invertible(&mut rng, n);
    let dinv = d.inverse().unwrap();
    let mut base = LInftyAlgebra::new("base", ScalarField::rationals(), vec![n]);
    for i in 0..n {
        for j in i + 1..n {
            let out = (0..n).map(|_| rand_scalar(&mut rng)).collect();
            base.set_bracket(&[Elem::new(0, i), Elem::new(0, j)], out).unwrap();
        }
    }
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let b2 = |x: &[Scalar], y: &[Scalar]| base.bracket(&[gv(0, x.to_vec()), gv(0, y.to_vec())]).coords;
    let mut l = LInftyAlgebra::new("bc", ScalarField::rationals(), vec![n, n]);
    let sign = if negate_unary { Scalar::from_int(-1) } else { Scalar::one() };
    for h in 0..n {
        let col = d.column(h).iter().map(|x| x * &sign).collect();
        l.set_bracket(&[Elem::new(1, h)], col).unwrap();
    }
    for (k, v) in base.brackets() {
        l.set_bracket(k, v.to_vec()).unwrap();
    }
    for x in 0..n {
        for h in 0..n {
            let v = dinv.apply(&b2(&unit(x), &d.column(h)));
            l.set_bracket(&[Elem::new(0, x), Elem::new(1, h)], v).unwrap();
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (unit(a), unit(b), unit(c));
                let t1 = b2(&b2(&x, &y), &z);
                let t2 = b2(&b2(&x, &z), &y);
                let t3 = b2(&b2(&y, &z), &x);
                let j: Vec<Scalar> = (0..n).map(|i| -&t1[i] + &t2[i] - &t3[i]).collect();
                l.set_bracket(&[Elem::new(0, a), Elem::new(0, b), Elem::new(0, c)], dinv.apply(&j))
                    .unwrap();
            }
        }
    }
    l
}

#[test]
fn unary_sign_agrees_with_two_term_axioms() {
    for seed in 0..6 {
        let good = random_two_term(seed, 3, false);
        let r = good.ce_square_zero();
        assert!(r.holds, "seed {seed}: {:?}", r.violations.first());
        let flipped = random_two_term(seed, 3, true);
        assert!(!flipped.ce_square_zero().holds, "seed {seed}");
    }
}

#[test]
fn perturbed_ternary_bracket_fails() {
    let mut l = random_two_term(11, 3, false);
    let key = [Elem::new(0, 0), Elem::new(0, 1), Elem::new(0, 2)];
    let mut v = l.bracket_basis(&key).unwrap_or_else(|| vec![Scalar::zero(); 3]);
    v[0] += &Scalar::one();
    l.set_bracket(&key, v).unwrap();
    assert!(!l.ce_square_zero().holds);
}

