//! Differential-graded properties of polynomial forms and horn extensions.

use std::collections::BTreeMap;

use linftykan::forms::{
    homotopy_operator, horn_extend_form, horn_projection, literal_flow_term, FormError, HornFamily, PolyForm,
    PolyMap,
};
use linftykan::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_form(rng: &mut ChaCha8Rng, m: usize, degree: usize, max_poly: u32, terms: usize) -> PolyForm {
    let mut f = PolyForm::zero(m);
    if degree > m {
        return f;
    }
    for _ in 0..terms {
        let mut dt: Vec<usize> = (1..=m).collect();
        while dt.len() > degree {
            dt.remove(rng.gen_range(0..dt.len()));
        }
        let mut exps = vec![0; m];
        for _ in 0..rng.gen_range(0..=max_poly) {
            exps[rng.gen_range(0..m)] += 1;
        }
        let c = Scalar::from_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        f = &f + &PolyForm::monomial(m, exps, &dt, c).unwrap();
    }
    f
}

fn random_simplicial(rng: &mut ChaCha8Rng, src: usize, tgt: usize) -> PolyMap {
    let v: Vec<usize> = (0..=src).map(|_| rng.gen_range(0..=tgt)).collect();
    PolyMap::simplicial(src, tgt, &v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn leibniz(seed in any::<u64>(), m in 1usize..=4, p in 0usize..=3, q in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_form(&mut rng, m, p, 2, 3);
        let b = random_form(&mut rng, m, q, 2, 3);
        let lhs = a.wedge(&b).d();
        let sign = if p % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let rhs = &a.d().wedge(&b) + &a.wedge(&b.d()).scale(&sign);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn pullback_is_functorial_dga_map(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_simplicial(&mut rng, k, n);
        let psi = random_simplicial(&mut rng, n, m);
        let (dw, du) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
        let w = random_form(&mut rng, m, dw, 2, 3);
        let u = random_form(&mut rng, m, du, 2, 2);
        let two_step = w.pullback(&psi).unwrap().pullback(&phi).unwrap();
        prop_assert_eq!(&two_step, &w.pullback(&phi.then(&psi).unwrap()).unwrap());
        prop_assert_eq!(w.d().pullback(&psi).unwrap(), w.pullback(&psi).unwrap().d());
        prop_assert_eq!(
            w.wedge(&u).pullback(&psi).unwrap(),
            w.pullback(&psi).unwrap().wedge(&u.pullback(&psi).unwrap())
        );
    }

    #[test]
    fn stokes_on_simplex(seed in any::<u64>(), m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_form(&mut rng, m, m - 1, 3, 4);
        let mut boundary = Scalar::zero();
        for i in 0..=m {
            let face = w.pullback(&PolyMap::face(m, i).unwrap()).unwrap();
            let p = face.simplex_period().unwrap();
            if i % 2 == 0 { boundary += &p } else { boundary -= &p }
        }
        prop_assert_eq!(w.d().simplex_period().unwrap(), boundary);
    }

    #[test]
    fn homotopy_operator_is_a_chain_homotopy(seed in any::<u64>(), m in 1usize..=3, deg in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j = rng.gen_range(0..=m);
        let mut set = vec![j];
        for v in 0..=m {
            if v != j && (set.len() == 1 || rng.gen_bool(0.5)) { set.push(v); }
        }
        let (_, p, _) = horn_projection(m, j, &set).unwrap();
        let w = random_form(&mut rng, m, deg.min(m), 2, 3);
        let lhs = &homotopy_operator(&p, &w.d()).unwrap() + &homotopy_operator(&p, &w).unwrap().d();
        prop_assert_eq!(lhs, &w - &w.pullback(&p).unwrap());
    }

    #[test]
    fn horn_extension_restricts_and_has_prescribed_differential(
        seed in any::<u64>(), m in 1usize..=3, deg in 0usize..=2, with_beta in any::<bool>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j = rng.gen_range(0..=m);
        let deg = deg.min(m);
        let w = random_form(&mut rng, m, deg, 2, 3);
        let closed = if with_beta { w.clone() } else { w.d().is_zero().then(|| w.clone()).unwrap_or_else(|| w.d()) };
        let base = if with_beta { w.clone() } else { closed.clone() };
        let family = HornFamily::restrict(&base, j).unwrap();
        let beta = with_beta.then(|| base.d());
        let ext = horn_extend_form(&family, beta.as_ref(), None).unwrap();
        prop_assert_eq!(&HornFamily::restrict(&ext, j).unwrap(), &family);
        match &beta {
            Some(b) => prop_assert_eq!(&ext.d(), b),
            None => prop_assert!(ext.d().is_zero()),
        }
        // Pinned variant: a section through the pin.
        let pin = random_form(&mut rng, m, deg, 2, 3);
        let pin = if with_beta { pin } else { pin.d().is_zero().then(|| pin.clone()).unwrap_or_else(|| PolyForm::zero(m)) };
        let pin_family = HornFamily::restrict(&pin, j).unwrap();
        let pin_beta = with_beta.then(|| pin.d());
        prop_assert_eq!(&horn_extend_form(&pin_family, pin_beta.as_ref(), Some(&pin)).unwrap(), &pin);
        let shifted = horn_extend_form(&family, beta.as_ref(), Some(&pin)).unwrap();
        prop_assert_eq!(&HornFamily::restrict(&shifted, j).unwrap(), &family);
        if let Some(b) = &beta { prop_assert_eq!(&shifted.d(), b); }
    }
}

#[test]
fn closed_edge_family_extends_closed() {
    // m = 2, j = 0: constant multiples of the edge coordinate on both horn edges.
    let c = Scalar::from_frac(3, 2);
    let edge = PolyForm::dt(1, 1).scale(&c);
    let family = HornFamily::new(2, 0, BTreeMap::from([(1, edge.clone()), (2, edge)])).unwrap();
    let ext = horn_extend_form(&family, None, None).unwrap();
    assert!(ext.d().is_zero());
    assert_eq!(HornFamily::restrict(&ext, 0).unwrap(), family);
}

#[test]
fn volume_form_with_zero_horn() {
    let vol = PolyForm::dt(2, 1).wedge(&PolyForm::dt(2, 2));
    let family = HornFamily::restrict(&PolyForm::zero(2), 0).unwrap();
    let ext = horn_extend_form(&family, Some(&vol), None).unwrap();
    assert_eq!(ext.d(), vol);
    assert!(HornFamily::restrict(&ext, 0).unwrap().is_zero());
    assert!(horn_extend_form(&family, None, None).unwrap().is_zero());
}

#[test]
fn literal_flow_term_is_not_a_primitive() {
    // With the fixed-s pullback the s-weight of the velocity is double counted:
    // the result is ∫ s·ι_{∂s}H*β ds, whose differential misses β.
    let vol = PolyForm::dt(2, 1).wedge(&PolyForm::dt(2, 2));
    let (_, p, _) = horn_projection(2, 0, &[0, 1]).unwrap();
    let good = homotopy_operator(&p, &vol).unwrap();
    let literal = literal_flow_term(&p, &vol).unwrap();
    assert_eq!(good.d(), &vol - &vol.pullback(&p).unwrap());
    assert_ne!(literal.d(), good.d());
    assert_eq!(literal.d(), vol.scale(&Scalar::from_frac(1, 2)));
}

#[test]
fn contraction_examples() {
    let m = 2;
    let (_, p, _) = horn_projection(m, 0, &[0, 1]).unwrap();
    let v: Vec<PolyForm> = (1..=m).map(|i| &PolyForm::coord(m, i) - &p.components()[i - 1]).collect();
    let vol = PolyForm::dt(2, 1).wedge(&PolyForm::dt(2, 2));
    let expected = PolyForm::coord(2, 1).wedge(&PolyForm::dt(2, 2));
    assert_eq!(vol.contract(&v), expected);
    assert!(PolyForm::coord(2, 1).contract(&v).is_zero());
    let field = vec![Scalar::from_int(7), Scalar::zero()].into_iter().map(|c| PolyForm::constant(2, c)).collect::<Vec<_>>();
    assert_eq!(PolyForm::dt(2, 1).contract(&field), PolyForm::constant(2, Scalar::from_int(7)));
}

#[test]
fn horn_input_errors() {
    // 0-forms that disagree at the shared vertex 0.
    let e = PolyForm::one(1);
    let bad = HornFamily::new(2, 0, BTreeMap::from([(1, e.clone()), (2, e.scale(&Scalar::from_int(2)))]));
    assert!(matches!(bad, Err(FormError::Incompatible(1, 2))));
    let missing = HornFamily::new(2, 0, BTreeMap::from([(1, e.clone())]));
    assert!(matches!(missing, Err(FormError::MissingFacet { .. })));
    let fam = HornFamily::restrict(&PolyForm::coord(2, 1).wedge(&PolyForm::dt(2, 2)), 0).unwrap();
    let vol = PolyForm::dt(2, 1).wedge(&PolyForm::dt(2, 2)).scale(&Scalar::from_int(3));
    let fam0 = HornFamily::restrict(&PolyForm::coord(2, 1), 0).unwrap();
    assert!(matches!(horn_extend_form(&fam0, Some(&PolyForm::dt(2, 2)), None), Err(FormError::Mismatch(_))));
    assert!(horn_extend_form(&fam, Some(&vol), None).is_ok());
}
