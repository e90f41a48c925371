mod common;

use std::collections::BTreeMap;

use common::{filiform4, heisenberg_crossed, heisenberg_module, heisenberg_string, nilpotent_samples};
use linftykan::forms::{horn_extend_form, HornFamily, PolyForm};
use linftykan::intl::{
    fill_horn, homotopy_witness, integrate_nilpotent_gauge, period_class, random_form, random_mc, validate_mc,
    AbelianComparison, Horn, IntlError, LieData, MCElement,
};
use linftykan::linf::{abelian, heisenberg, su2, LInftyAlgebra};
use linftykan::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn t(m: usize, i: usize) -> PolyForm {
    PolyForm::coord(m, i)
}

fn dt(m: usize, i: usize) -> PolyForm {
    PolyForm::dt(m, i)
}

fn element(m: usize, forms: Vec<PolyForm>) -> MCElement {
    MCElement { m, forms }
}

#[test]
fn validation_examples() {
    for l in nilpotent_samples() {
        assert!(validate_mc(&l, &MCElement::zero(&l, 2)).unwrap().holds);
    }
    let line = abelian(&[1]);
    let closed = element(2, vec![(&t(2, 1).wedge(&dt(2, 2)) + &t(2, 2).wedge(&dt(2, 1))).scale(&q(3, 1))]);
    assert!(validate_mc(&line, &closed).unwrap().holds);
    let not_closed = element(2, vec![t(2, 2).wedge(&dt(2, 1))]);
    let report = validate_mc(&line, &not_closed).unwrap();
    assert!(!report.holds);
    assert_eq!(report.failure.unwrap().1, dt(2, 2).wedge(&dt(2, 1)));
    let wrong_degree = element(2, vec![t(2, 1)]);
    assert!(validate_mc(&line, &wrong_degree).is_err());
}

#[test]
fn face_and_degeneracy_examples() {
    let line = abelian(&[1]);
    let x = element(1, vec![dt(1, 1).scale(&q(5, 2))]);
    for i in 0..2 {
        let f = x.face(i).unwrap();
        assert_eq!(f.m, 0);
        assert!(f.is_zero());
        assert_eq!(x.degeneracy(i).unwrap().face(i).unwrap(), x);
    }
    assert!(validate_mc(&line, &x.degeneracy(0).unwrap()).unwrap().holds);
}

#[test]
fn simplicial_identities_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in [heisenberg(), heisenberg_string(), heisenberg_module()] {
        for m in 1..=4 {
            let x = random_mc(&l, m, 1, &mut rng).unwrap();
            assert!(validate_mc(&l, &x).unwrap().holds, "{} m={m}", l.name);
            for j in 0..=m {
                for i in (0..j).filter(|_| m >= 2) {
                    assert_eq!(x.face(j).unwrap().face(i).unwrap(), x.face(i).unwrap().face(j - 1).unwrap());
                }
                let s = x.degeneracy(j).unwrap();
                assert!(validate_mc(&l, &s).unwrap().holds);
                assert_eq!(s.face(j).unwrap(), x);
                assert_eq!(s.face(j + 1).unwrap(), x);
            }
        }
    }
}

#[test]
fn gauge_examples() {
    let line = abelian(&[1]);
    let x = element(1, vec![dt(1, 1).scale(&q(7, 3))]);
    // −α = f⁻¹df: in the abelian case u is minus the primitive.
    let g = integrate_nilpotent_gauge(&line, &x).unwrap();
    assert_eq!(g.u, vec![t(1, 1).scale(&q(-7, 3))]);
    assert_eq!(g.base, 0);

    let h = heisenberg();
    let zero = integrate_nilpotent_gauge(&h, &MCElement::zero(&h, 2)).unwrap();
    assert!(zero.u.iter().all(PolyForm::is_zero));

    // α = dt₁·x + dt₂·y + t₁dt₂·z is flat: dα^z = dt₁dt₂ = α^x α^y.
    let alpha = element(2, vec![dt(2, 1), dt(2, 2), t(2, 1).wedge(&dt(2, 2))]);
    assert!(validate_mc(&h, &alpha).unwrap().holds);
    let g = integrate_nilpotent_gauge(&h, &alpha).unwrap();
    let expected = vec![-t(2, 1), -t(2, 2), t(2, 1).wedge(&t(2, 2)).scale(&q(-1, 2))];
    assert_eq!(g.u, expected);

    // Not flat: rejected before integration.
    let bad = element(2, vec![dt(2, 1), t(2, 1).wedge(&dt(2, 2)), PolyForm::zero(2)]);
    assert!(integrate_nilpotent_gauge(&h, &bad).is_err());
    assert!(integrate_nilpotent_gauge(&su2(), &MCElement::zero(&su2(), 1)).is_err());
}

#[test]
fn gauge_transport_on_random_connections() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for l in [heisenberg(), filiform4(), heisenberg_crossed()] {
        for m in 1..=3 {
            let x = random_mc(&l, m, 2, &mut rng).unwrap();
            let g = integrate_nilpotent_gauge(&l, &x).unwrap();
            assert!(g.at_vertex(0).iter().all(Scalar::is_zero));
            if l.dims() == [4] || l.name == "h3" {
                let lie = LieData::from_degree_zero(&l);
                let theta = lie.log_derivative(&g.u);
                for (a, b) in theta.iter().zip(&x.forms) {
                    assert!((a + b).is_zero());
                }
            }
        }
    }
}

fn check_fill(l: &LInftyAlgebra, horn: &Horn, pin: Option<&MCElement>) -> MCElement {
    let y = fill_horn(l, horn, pin).unwrap();
    assert!(validate_mc(l, &y).unwrap().holds);
    for (&i, f) in &horn.facets {
        assert_eq!(&y.face(i).unwrap(), f, "{} Λ[{},{}] facet {i}", l.name, horn.m, horn.j);
    }
    y
}

#[test]
fn zero_horn_fills_with_zero() {
    for l in nilpotent_samples() {
        for m in 1..=3 {
            for j in 0..=m {
                let horn = Horn::restrict(&MCElement::zero(&l, m), j).unwrap();
                assert!(check_fill(&l, &horn, None).is_zero());
            }
        }
    }
}

#[test]
fn abelian_filling_is_form_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let l = abelian(&[0, 1]);
    for m in 2..=3 {
        let x = element(m, vec![random_form(&mut rng, m, 1, 3).d()]);
        for j in 0..=m {
            let horn = Horn::restrict(&x, j).unwrap();
            let y = check_fill(&l, &horn, None);
            let family = HornFamily::restrict(&x.forms[0], j).unwrap();
            assert_eq!(y.forms[0], horn_extend_form(&family, None, None).unwrap());
        }
    }
}

#[test]
fn heisenberg_horns_fill() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = heisenberg();
    for _ in 0..5 {
        let x = random_mc(&h, 2, 2, &mut rng).unwrap();
        check_fill(&h, &Horn::restrict(&x, 1).unwrap(), None);
    }
}

#[test]
fn random_horns_fill_and_pins_are_reproduced() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in nilpotent_samples() {
        for m in 1..=3 {
            for _ in 0..2 {
                let j = rng.gen_range(0..=m);
                let x = random_mc(&l, m, 2, &mut rng).unwrap();
                let pin = random_mc(&l, m, 2, &mut rng).unwrap();
                let horn = Horn::restrict(&x, j).unwrap();
                check_fill(&l, &horn, None);
                check_fill(&l, &horn, Some(&pin));
                let own = check_fill(&l, &Horn::restrict(&pin, j).unwrap(), Some(&pin));
                assert_eq!(own, pin, "{} m={m} j={j}", l.name);
            }
        }
    }
}

#[test]
fn horn_errors() {
    let h = heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = random_mc(&h, 2, 1, &mut rng).unwrap();
    let y = random_mc(&h, 2, 1, &mut rng).unwrap();
    let mut horn = Horn::restrict(&x, 1).unwrap();
    horn.facets.insert(0, y.face(0).unwrap());
    if horn.facets[&0].face(0).unwrap() != horn.facets[&2].face(1).unwrap() {
        assert!(fill_horn(&h, &horn, None).is_err());
    }
    horn.facets.remove(&0);
    assert!(fill_horn(&h, &horn, None).is_err());
    let s = su2();
    assert!(fill_horn(&s, &Horn::restrict(&MCElement::zero(&s, 2), 0).unwrap(), None).is_err());
    let mut bad = Horn::restrict(&MCElement::zero(&h, 3), 0).unwrap();
    bad.facets.get_mut(&1).unwrap().forms[0] = PolyForm::coord(2, 2).wedge(&PolyForm::dt(2, 1));
    assert!(matches!(fill_horn(&h, &bad, None), Err(IntlError::InvalidFacet { facet: 1, .. })));
}

/// log(e^X e^Y) through degree 4, exact for Lie algebras of class ≤ 4.
fn bch(lie: &LieData, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let b = |u: &[Scalar], v: &[Scalar]| lie.bracket(u, v);
    let xy = b(x, y);
    let xxy = b(x, &xy);
    let yyx = b(y, &b(y, x));
    let yxxy = b(y, &xxy);
    (0..lie.dim)
        .map(|i| {
            &(&(&x[i] + &y[i]) + &(&xy[i] * &q(1, 2))) + &(&(&(&xxy[i] + &yyx[i]) * &q(1, 12)) - &(&yxxy[i] * &q(1, 24)))
        })
        .collect()
}

#[test]
fn composition_by_filling_is_bch() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for l in [heisenberg(), filiform4()] {
        let lie = LieData::from_degree_zero(&l);
        for _ in 0..6 {
            let ex = random_mc(&l, 1, 3, &mut rng).unwrap();
            let ey = random_mc(&l, 1, 3, &mut rng).unwrap();
            let horn = Horn {
                m: 2,
                j: 1,
                facets: BTreeMap::from([(0, ey.clone()), (2, ex.clone())]),
            };
            let filler = check_fill(&l, &horn, None);
            let end = |e: &MCElement| integrate_nilpotent_gauge(&l, e).unwrap().at_vertex(1);
            let z = end(&filler.face(1).unwrap());
            assert_eq!(z, bch(&lie, &end(&ex), &end(&ey)), "{}", l.name);
        }
    }
}

#[test]
fn period_examples() {
    let line = abelian(&[1]);
    assert_eq!(period_class(&line, &MCElement::zero(&line, 1)).unwrap(), vec![Scalar::zero()]);
    // 3·dt + d(t²(1 − t)) has period 3.
    let bump = &t(1, 1).wedge(&t(1, 1)) - &t(1, 1).wedge(&t(1, 1)).wedge(&t(1, 1));
    let x = element(1, vec![&dt(1, 1).scale(&q(3, 1)) + &bump.d()]);
    assert_eq!(period_class(&line, &x).unwrap(), vec![q(3, 1)]);
    let scaled = element(1, vec![x.forms[0].scale(&q(-2, 5))]);
    assert_eq!(period_class(&line, &scaled).unwrap(), vec![q(-6, 5)]);
    let plane = abelian(&[0, 1]);
    let y = element(2, vec![t(2, 1).wedge(&dt(2, 1)).wedge(&dt(2, 2))]);
    assert_eq!(period_class(&plane, &y).unwrap(), vec![q(1, 6)]);
    assert!(period_class(&heisenberg(), &MCElement::zero(&heisenberg(), 1)).is_err());
    let edge_nonzero = element(2, vec![t(2, 1).wedge(&dt(2, 2))]);
    assert!(period_class(&abelian(&[1]), &edge_nonzero).is_err());
}

fn check_homotopy(l: &LInftyAlgebra, x: &MCElement, x2: &MCElement) {
    match homotopy_witness(l, x, x2).unwrap() {
        AbelianComparison::Homotopic(y) => {
            let n = x.m;
            assert!(validate_mc(l, &y).unwrap().holds);
            assert_eq!(&y.face(n).unwrap(), x);
            assert_eq!(&y.face(n + 1).unwrap(), x2);
            for i in 0..n {
                assert!(y.face(i).unwrap().is_zero());
            }
        }
        AbelianComparison::Separated(d) => panic!("equal periods reported as separated: {d:?}"),
    }
}

#[test]
fn abelian_homotopy_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (l, n) in [(abelian(&[1]), 1usize), (abelian(&[0, 1]), 2), (abelian(&[2]), 1)] {
        for _ in 0..5 {
            let x = element(n, (0..l.total_dim()).map(|_| random_form(&mut rng, n, n, 3)).collect());
            // Same periods: subtract the period multiple of a reference form with period 1.
            let reference = match n {
                1 => dt(1, 1),
                _ => dt(2, 1).wedge(&dt(2, 2)).scale(&q(2, 1)),
            };
            let x2 = element(
                n,
                x.forms
                    .iter()
                    .map(|f| {
                        let other = random_form(&mut rng, n, n, 3);
                        let shift = &f.simplex_period().unwrap() - &other.simplex_period().unwrap();
                        &other + &reference.scale(&shift)
                    })
                    .collect(),
            );
            assert_eq!(period_class(&l, &x).unwrap(), period_class(&l, &x2).unwrap());
            check_homotopy(&l, &x, &x2);
            let x3 = element(n, x.forms.iter().map(|f| f + &reference).collect());
            match homotopy_witness(&l, &x, &x3).unwrap() {
                AbelianComparison::Separated(d) => assert!(d.iter().all(|c| c == &Scalar::from_int(-1))),
                AbelianComparison::Homotopic(_) => panic!("different periods reported homotopic"),
            }
        }
    }
}
