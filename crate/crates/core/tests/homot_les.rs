mod common;

use linftykan::gradedlin::{integer_rank, FGAbGroup, Matrix};
use linftykan::homot::{les_assemble, tvf_integrability, BoundaryData, DiffeoGroupPres, HomotError, HomotopyGroup};
use linftykan::linf::{abelian, build_end_example, heisenberg, su2, truncate_linf, StringLieTwoAlgebra, TruncationMode};
use linftykan::{Scalar, ScalarField};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn string_data() -> BoundaryData {
    let mut b = BoundaryData::new("SU(2)", ScalarField::rationals());
    b.pi.insert(3, FGAbGroup::free(1));
    b.boundary.insert(2, Matrix::from_int_rows(&[&[1]]));
    b
}

fn higher(g: &HomotopyGroup) -> &DiffeoGroupPres {
    match g {
        HomotopyGroup::Higher(p) => p,
        HomotopyGroup::Fundamental(_) => panic!("expected a higher group"),
    }
}

#[test]
fn string_algebra_sequence() {
    let s = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap();
    let h = s.homology_dims();
    assert_eq!(h, vec![3, 1]);
    let groups = les_assemble(&h, &string_data(), 4).unwrap();
    assert_eq!(groups[0], HomotopyGroup::Fundamental("SU(2)".into()));
    let pi2 = higher(&groups[1]);
    assert_eq!((pi2.vector_dim, pi2.subgroup.clone()), (1, vec![vec![Scalar::one()]]));
    assert!(pi2.discrete.is_trivial());
    assert_eq!(pi2.to_string(), "R/<(1)>");
    assert_eq!(pi2.lie_algebra_dim(), 1);
    assert!(higher(&groups[2]).is_trivial());
    assert!(higher(&groups[3]).is_trivial());
    assert!(tvf_integrability(&h, &string_data(), 2).unwrap());
}

#[test]
fn nilpotent_and_abelian_sequences() {
    let h = heisenberg().homology_dims();
    let data = BoundaryData::new("H3", ScalarField::rationals());
    for g in &les_assemble(&h, &data, 3).unwrap()[1..] {
        let p = higher(g);
        assert_eq!(p.vector_dim, h.get(p.degree - 1).copied().unwrap_or(0));
        assert!(p.subgroup.is_empty() && p.discrete.is_trivial());
    }
    let l = abelian(&[0, 0, 2]);
    let groups = les_assemble(&l.homology_dims(), &BoundaryData::new("1", ScalarField::rationals()), 4).unwrap();
    let dims: Vec<usize> = groups[1..].iter().map(|g| higher(g).vector_dim).collect();
    assert_eq!(dims, vec![0, 2, 0]);
    assert_eq!(higher(&groups[2]).to_string(), "R^2");
}

#[test]
fn presentation_dimensions() {
    let k_only = DiffeoGroupPres {
        degree: 3,
        vector_dim: 0,
        subgroup: vec![],
        discrete: FGAbGroup::from_parts(0, &[BigInt::from(2)]),
    };
    assert_eq!(k_only.lie_algebra_dim(), 0);
    let torus = DiffeoGroupPres {
        degree: 2,
        vector_dim: 2,
        subgroup: vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]],
        discrete: FGAbGroup::trivial(),
    };
    assert_eq!(torus.lie_algebra_dim(), 2);
}

#[test]
fn discrete_part_is_the_kernel() {
    // π₂(G) = ℤ² ⊕ ℤ/3 mapping to H₀ = ℝ by (1, 2, 0): kernel ℤ ⊕ ℤ/3.
    let mut b = BoundaryData::new("G", ScalarField::rationals());
    b.pi.insert(2, FGAbGroup::from_parts(2, &[BigInt::from(3)]));
    b.boundary.insert(1, Matrix::from_int_rows(&[&[1, 2, 0]]));
    let groups = les_assemble(&[1, 0], &b, 2).unwrap();
    assert_eq!(higher(&groups[1]).discrete, FGAbGroup::from_parts(1, &[BigInt::from(3)]));
}

#[test]
fn inconsistent_data_is_rejected() {
    let mut torsion = BoundaryData::new("G", ScalarField::rationals());
    torsion.pi.insert(3, FGAbGroup::from_parts(0, &[BigInt::from(2)]));
    torsion.boundary.insert(2, Matrix::from_int_rows(&[&[1]]));
    assert!(matches!(les_assemble(&[3, 1], &torsion, 3), Err(HomotError::Inconsistent { n: 2, .. })));
    let mut shape = string_data();
    shape.boundary.insert(2, Matrix::from_int_rows(&[&[1, 0]]));
    assert!(les_assemble(&[3, 1], &shape, 3).is_err());
    let mut field = string_data();
    field.boundary.insert(2, Matrix::from_rows(vec![vec![Scalar::sqrt(2)]]));
    assert!(les_assemble(&[3, 1], &field, 3).is_err());
}

#[test]
fn integrability_examples() {
    let end = build_end_example(&Scalar::one(), &Scalar::sqrt(2)).unwrap();
    let h = end.homology_dims();
    assert_eq!(h, vec![6, 1]);
    let mut b = BoundaryData::new("SU(2)×SU(2)", end.field().clone());
    b.pi.insert(3, FGAbGroup::free(2));
    b.boundary.insert(2, Matrix::from_rows(vec![vec![Scalar::sqrt(2), -Scalar::one()]]));
    assert!(!tvf_integrability(&h, &b, 2).unwrap());
    b.boundary.insert(2, Matrix::from_int_rows(&[&[2, -1]]));
    assert!(tvf_integrability(&h, &b, 2).unwrap());
    b.boundary.remove(&2);
    assert!(tvf_integrability(&h, &b, 2).unwrap());
}

#[test]
fn integrability_matches_rank_criterion() {
    let field: ScalarField = "Q(sqrt2)".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let rows = rng.gen_range(1..=2);
        let cols = rng.gen_range(1..=3);
        let entry = |rng: &mut ChaCha8Rng| {
            let a = Scalar::from_int(rng.gen_range(-2..=2));
            let b = Scalar::from_int(rng.gen_range(-1..=1));
            &a + &(&b * &Scalar::sqrt(2))
        };
        let m = Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| entry(&mut rng)).collect()).collect());
        let mut b = BoundaryData::new("G", field.clone());
        b.pi.insert(3, FGAbGroup::free(cols));
        b.boundary.insert(2, m.clone());
        let gens: Vec<Vec<Scalar>> = (0..cols).map(|c| m.column(c)).collect();
        let expected = integer_rank(&gens, &field).unwrap() == m.rank();
        assert_eq!(tvf_integrability(&[0, rows], &b, 2).unwrap(), expected);
    }
}

#[test]
fn truncation_agrees_in_low_degrees() {
    let s = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap();
    let full = les_assemble(&s.homology_dims(), &string_data(), 3).unwrap();
    for n in 1..=2 {
        let t = truncate_linf(&s, n, TruncationMode::AtMost).unwrap().algebra;
        let part = les_assemble(&t.homology_dims(), &string_data(), n).unwrap();
        assert_eq!(part[..], full[..n]);
    }
}

#[test]
fn boundary_data_json_round_trip() {
    let mut b = string_data();
    b.pi.insert(4, FGAbGroup::from_parts(0, &[BigInt::from(2)]));
    let v = b.to_json();
    assert_eq!(BoundaryData::from_json(&v).unwrap(), b);
    let parsed = BoundaryData::from_json(&serde_json::json!({
        "group": "SU(2)", "pi": {"3": {"rank": 1}}, "boundary": {"2": [[1]]}
    }))
    .unwrap();
    assert_eq!(parsed, string_data());
}
