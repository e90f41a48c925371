use linftykan::stringmod::{
    calibrate, cartan_period, class_equal, cocycle_check, exp_pure, mc_pair_residual, BundleTwoSimplex, PrismHomotopy, Quat,
    RadialPrimitive, SU2Map, StringError, ZeroTwoForm, DEFAULT_ORDER, PAIRING_SCALE,
};
use nalgebra::Vector3;

fn unit(w: f64, x: f64, y: f64, z: f64) -> Quat {
    let q = Quat::new(w, x, y, z);
    q / q.norm()
}

#[test]
fn calibration_matches_the_stored_scale() {
    let c = calibrate(16).unwrap();
    assert!((c / PAIRING_SCALE - 1.0).abs() < 1e-8, "{c}");
}

#[test]
fn reference_periods() {
    assert_eq!(cartan_period(&SU2Map::constant(unit(1.0, 2.0, 3.0, 4.0)), 6).unwrap(), 0.0);
    let p = cartan_period(&SU2Map::degree_one(), DEFAULT_ORDER).unwrap();
    assert!((p - 1.0).abs() < 1e-2, "{p}");
    let r = cartan_period(&SU2Map::degree_one_reversed(), DEFAULT_ORDER).unwrap();
    assert!((r + 1.0).abs() < 1e-2, "{r}");
}

#[test]
fn degree_one_model_collapses_the_boundary() {
    let f = SU2Map::degree_one();
    assert!(f.boundary_deviation(8).unwrap() < 1e-12);
    assert!(SU2Map::degree_one().concat(3).boundary_deviation(8).unwrap() < 1e-12);
    assert!((f.eval([0.25, 0.25, 0.25]).unwrap() + Quat::identity()).norm() < 1e-15);
}

#[test]
fn quadrature_converges() {
    let f = SU2Map::degree_one();
    for k in [8, 10] {
        let a = cartan_period(&f, k).unwrap();
        let b = cartan_period(&f, 2 * k).unwrap();
        assert!((a - b).abs() < 1e-3, "k={k}: {a} vs {b}");
    }
}

#[test]
fn concatenations_are_integral() {
    for k in 1..=3 {
        let p = cartan_period(&SU2Map::degree_one().concat(k), DEFAULT_ORDER).unwrap();
        assert!((p - k as f64).abs() < 2e-2, "k={k}: {p}");
        let named = cartan_period(&SU2Map::named(&format!("concat-{k}")).unwrap(), 8).unwrap();
        assert!((named - k as f64).abs() < 2e-2);
    }
}

#[test]
fn left_translation_invariance() {
    let g = unit(0.3, -0.2, 0.9, 0.1);
    for f in [SU2Map::degree_one(), smooth_sample()] {
        let a = cartan_period(&f, 8).unwrap();
        let b = cartan_period(&f.left_translate(g), 8).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

/// A smooth map that is not boundary-collapsing, with a non-integral period.
fn smooth_sample() -> SU2Map {
    SU2Map::smooth("sample", |t| exp_pure(Vector3::new(2.0 * t[0] + t[1] * t[2], 1.5 * t[1] - t[0] * t[0], t[2] + 0.5 * t[0])))
}

#[test]
fn samples_are_checked() {
    let bad = SU2Map::smooth("bad", |_| Quat::new(2.0, 0.0, 0.0, 0.0));
    assert!(matches!(cartan_period(&bad, 4), Err(StringError::NotUnit { .. })));
    let nan = SU2Map::smooth("nan", |_| Quat::new(f64::NAN, 0.0, 0.0, 0.0));
    assert!(matches!(cartan_period(&nan, 4), Err(StringError::NonFinite)));
    assert!(matches!(SU2Map::named("degree7"), Err(StringError::UnknownMap(_))));
}

#[test]
fn maurer_cartan_pairs() {
    let c = SU2Map::constant(Quat::identity());
    assert_eq!(mc_pair_residual(&c, &ZeroTwoForm, 4).unwrap(), 0.0);
    let f = SU2Map::degree_one();
    let beta = RadialPrimitive { map: &f, order: 16 };
    let r = mc_pair_residual(&f, &beta, 5).unwrap();
    assert!(r < 1e-3, "{r}");
    let r0 = mc_pair_residual(&f, &ZeroTwoForm, 5).unwrap();
    assert!(r0 > 0.1, "{r0}");
}

#[test]
fn cocycle_examples() {
    let trivial = BundleTwoSimplex::trivial_edges;
    let c = SU2Map::constant(Quat::identity());
    let faces = |bs: [f64; 4]| bs.map(|b| BundleTwoSimplex::new(trivial(), b).unwrap());
    assert_eq!(cocycle_check(&faces([0.0; 4]), &c, 4).unwrap(), 0.0);
    let f = SU2Map::degree_one();
    let d = cocycle_check(&faces([1.0, 0.0, 0.0, 0.0]), &f, DEFAULT_ORDER).unwrap();
    assert!(d < 1e-2, "{d}");
    // Integer shifts leave the defect unchanged exactly.
    let base = faces([0.25, 0.5, 0.125, 0.75]);
    let shifted = faces([3.25, -0.5, 2.125, 10.75]);
    let again = [0, 1, 2, 3].map(|i| base[i].shifted(i as i64 - 2));
    let d0 = cocycle_check(&base, &f, 6).unwrap();
    assert_eq!(d0, cocycle_check(&shifted, &f, 6).unwrap());
    assert_eq!(d0, cocycle_check(&again, &f, 6).unwrap());
    assert!((d0 - 0.125).abs() < 1e-2, "{d0}");
    // Faces must match the filling.
    let g = smooth_sample();
    let err = cocycle_check(&faces([0.0; 4]), &g, 4).unwrap_err();
    assert!(matches!(err, StringError::EdgeMismatch { face: 0, .. }));
    let own: [BundleTwoSimplex; 4] = std::array::from_fn(|i| BundleTwoSimplex::face_of(&g, i, 0.0).unwrap());
    let p = cartan_period(&g, DEFAULT_ORDER).unwrap();
    let d = cocycle_check(&own, &g, DEFAULT_ORDER).unwrap();
    let frac = (p - p.round()).abs();
    assert!((d - frac).abs() < 1e-12);
}

#[test]
fn bundle_classes() {
    let x = BundleTwoSimplex::new(BundleTwoSimplex::trivial_edges(), 0.1).unwrap();
    let constant = PrismHomotopy::constant(|_| Quat::identity());
    assert!(class_equal(&x, &x, &constant, 4, 1e-6).unwrap());
    let half = BundleTwoSimplex::new(BundleTwoSimplex::trivial_edges(), 0.6).unwrap();
    assert!(!class_equal(&x, &half, &constant, 4, 1e-6).unwrap());
    let one = BundleTwoSimplex::new(BundleTwoSimplex::trivial_edges(), 1.1).unwrap();
    assert!(class_equal(&x, &one, &constant, 4, 1e-6).unwrap());

    // A homotopy rel boundary from the constant map to a bubble.
    let bubble = PrismHomotopy::new("bubble", |x| {
        let bump = 27.0 * x[0] * x[1] * (1.0 - x[0] - x[1]);
        exp_pure(Vector3::new(3.0, 2.0 * x[0], -4.0 * x[1]) * (x[2] * bump))
    });
    let p = bubble.period(DEFAULT_ORDER).unwrap();
    assert!(p.abs() > 1e-3, "{p}");
    let y = BundleTwoSimplex::new(BundleTwoSimplex::trivial_edges(), 0.1 + p).unwrap();
    assert!(class_equal(&x, &y, &bubble, DEFAULT_ORDER, 1e-6).unwrap());
    assert!(class_equal(&y, &x, &bubble.reversed(), DEFAULT_ORDER, 1e-6).unwrap());
    assert!(!class_equal(&x, &x, &bubble, DEFAULT_ORDER, 1e-6).unwrap());

    let moving = PrismHomotopy::new("moving", |x| exp_pure(Vector3::new(x[2], 0.0, 0.0)));
    assert!(matches!(class_equal(&x, &x, &moving, 4, 1e-6), Err(StringError::BoundaryMoved(_))));
}
