use linftykan::simpset::{
    find_collapse, nerve_2group, skeletal_equivalent, two_group_from_kan, CoherentTwoGroup, FinSimplicialSet, SimpError,
};

fn kz(n: usize, top: usize) -> FinSimplicialSet {
    FinSimplicialSet::cyclic_classifying(n, top)
}

fn s3_table() -> Vec<Vec<usize>> {
    // permutations of {0,1,2} in a fixed order, identity first
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    perms
        .iter()
        .map(|&a| perms.iter().map(|&b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect()
}

#[test]
fn constructions_satisfy_simplicial_identities() {
    for x in [
        FinSimplicialSet::point(4),
        FinSimplicialSet::simplex(2, 3),
        FinSimplicialSet::horn(2, 1, 3).unwrap(),
        FinSimplicialSet::boundary(2, 3).unwrap(),
        kz(2, 4),
        kz(3, 3),
        kz(2, 3).product(&kz(3, 3)),
    ] {
        x.validate().unwrap();
    }
    assert_eq!(kz(2, 4).count(4), 16);
    assert_eq!(FinSimplicialSet::simplex(1, 2).count(2), 4);
}

#[test]
fn broken_tables_are_rejected() {
    let mut x = kz(2, 2);
    x.faces[2][1][1] = 0;
    assert!(matches!(x.validate(), Err(SimpError::Identity(_))));
}

#[test]
fn kan_examples() {
    let k = kz(2, 4);
    assert!(k.is_kan(4).unwrap().kan);
    assert!(k.unique_fillers_above(1, 4).unwrap().is_ok());
    assert!(k.unique_fillers_above(0, 4).unwrap().is_err());

    let d1 = FinSimplicialSet::simplex(1, 2);
    let r = d1.is_kan(2).unwrap();
    assert!(!r.kan);
    let (m, j, facets) = r.counterexample.unwrap();
    assert_eq!((m, j), (2, 0));
    // d₁ ↦ constant at 0, d₂ ↦ (01)
    let labels: Vec<&str> = facets.iter().map(|&y| d1.labels[1][y].as_str()).collect();
    assert_eq!(labels, ["00", "01"]);

    assert!(FinSimplicialSet::point(3).is_kan(3).unwrap().kan);
    assert!(!FinSimplicialSet::boundary(2, 3).unwrap().is_kan(2).unwrap().kan);
    assert!(matches!(k.is_kan(5), Err(SimpError::Truncated { .. })));
}

#[test]
fn classifying_sets_have_unique_fillers_exactly_above_one() {
    for x in [kz(2, 4), kz(3, 3), FinSimplicialSet::classifying("BS3", &s3_table(), 3).unwrap()] {
        assert!(x.is_kan(x.top()).unwrap().kan, "{}", x.name);
        assert!(x.unique_fillers_above(1, x.top()).unwrap().is_ok(), "{}", x.name);
        assert!(x.unique_fillers_above(0, x.top()).unwrap().is_err(), "{}", x.name);
    }
}

#[test]
fn homotopy_groups() {
    let k = kz(2, 4);
    let p1 = k.pi_n(1).unwrap();
    assert_eq!(p1.order(), 2);
    assert_eq!(p1.to_string(), "Z/2");
    assert!(k.pi_n(2).unwrap().is_trivial());
    assert!(k.pi_n(3).unwrap().is_trivial());
    let k3 = kz(3, 3);
    assert_eq!(k3.pi_n(1).unwrap().to_string(), "Z/3");
    let s3 = FinSimplicialSet::classifying("BS3", &s3_table(), 3).unwrap();
    let g = s3.pi_n(1).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_abelian());
    let prod = kz(2, 3).product(&kz(3, 3));
    assert_eq!(prod.pi_n(1).unwrap().to_string(), "Z/6");
    let pt = FinSimplicialSet::point(4);
    for n in 0..=3 {
        assert!(pt.pi_n(n).unwrap().is_trivial());
    }
    assert!(matches!(FinSimplicialSet::simplex(1, 3).pi_n(1), Err(SimpError::NotReduced(2))));
    // Δ[1] with its two vertices identified is not Kan.
    let circle = FinSimplicialSet::classifying("Z/2", &[vec![0, 1], vec![1, 0]], 2).unwrap();
    assert!(matches!(circle.pi_n(2), Err(SimpError::Truncated { .. })));
}

#[test]
fn truncations() {
    let k = kz(2, 4);
    let t0 = k.truncate_at_most(0).unwrap();
    assert!((0..=4).all(|m| t0.count(m) == 1));
    let t1 = k.truncate_at_most(1).unwrap();
    assert!((0..=4).all(|m| t1.count(m) == k.count(m)));
    assert_eq!(t1.pi_n(1).unwrap().order(), 2);
    let lt1 = k.truncate_below(1).unwrap();
    assert!((0..=4).all(|m| lt1.count(m) == 1));
    let lt2 = k.truncate_below(2).unwrap();
    assert_eq!(lt2.count(2), 4);
    assert_eq!(lt2.pi_n(1).unwrap().order(), 2);
}

#[test]
fn truncation_of_a_two_type() {
    // Nerve of Z/2 twisted: π₁ = Z/2, π₂ = Z/2.
    let x = nerve_2group(&CoherentTwoGroup::skeletal_z2_twisted(), 4).unwrap();
    assert_eq!(x.pi_n(1).unwrap().order(), 2);
    assert_eq!(x.pi_n(2).unwrap().order(), 2);
    assert!(x.pi_n(3).unwrap().is_trivial());
    for n in 0..=2 {
        let le = x.truncate_at_most(n).unwrap();
        let lt_next = x.truncate_below(n + 1).unwrap();
        for i in 1..=2 {
            let expected = if i <= n { x.pi_n(i).unwrap().order() } else { 1 };
            assert_eq!(le.pi_n(i).unwrap().order(), expected, "τ≤{n} π{i}");
            assert_eq!(lt_next.pi_n(i).unwrap().order(), expected, "τ<{} π{i}", n + 1);
        }
        assert!(le.unique_fillers_above(n.max(1), 4).unwrap().is_ok(), "τ≤{n} fillers");
    }
}

#[test]
fn collapses() {
    let horn: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]];
    let c = find_collapse(2, &horn).unwrap().unwrap();
    assert_eq!(c.steps.len(), 2);
    assert!(c.steps.iter().all(|s| s.horn() == (1, s.horn().1)));

    let boundary: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2]];
    assert!(find_collapse(2, &boundary).unwrap().is_none());

    let vertex = find_collapse(0, &[vec![0]]).unwrap().unwrap();
    assert!(vertex.steps.is_empty());

    let mut full: Vec<Vec<usize>> = boundary.clone();
    full.push(vec![0, 1, 2]);
    let c = find_collapse(2, &full).unwrap().unwrap();
    assert_eq!(c.steps.len(), 3);
    assert_eq!(c.steps.last().unwrap().simplex, vec![0, 1, 2]);

    // Two disjoint vertices.
    assert!(find_collapse(1, &[vec![0], vec![1]]).unwrap().is_none());
    assert!(find_collapse(2, &[vec![0, 1]]).is_err());
}

#[test]
fn two_group_examples() {
    let triv = nerve_2group(&CoherentTwoGroup::trivial(), 4).unwrap();
    assert!((0..=4).all(|m| triv.count(m) == 1));

    let cm = CoherentTwoGroup::crossed_module_cyclic(2);
    let n = nerve_2group(&cm, 4).unwrap();
    assert_eq!(n.count(1), 1);
    assert_eq!(n.count(2), 2);
    assert_eq!(n.count(3), 8);
    assert!(n.is_kan(4).unwrap().kan);
    assert!(n.unique_fillers_above(2, 4).unwrap().is_ok());
    assert!(n.unique_fillers_above(1, 4).unwrap().is_err());

    let tw = CoherentTwoGroup::skeletal_z2_twisted();
    let n = nerve_2group(&tw, 4).unwrap();
    // |π₀|³·|π₁|³ three-simplices
    assert_eq!(n.count(3), 64);
    assert!(n.unique_fillers_above(2, 4).unwrap().is_ok());
}

#[test]
fn round_trip_through_the_nerve() {
    let z4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
    let samples = vec![
        CoherentTwoGroup::trivial(),
        CoherentTwoGroup::crossed_module_cyclic(2),
        CoherentTwoGroup::crossed_module_cyclic(3),
        CoherentTwoGroup::skeletal_z2_twisted(),
        CoherentTwoGroup::skeletal("Z/2 untwisted", vec![vec![0, 1], vec![1, 0]], 2, |_, _, _| 0).unwrap(),
        // Z/4 objects with the cocycle ω(a,b,c) = a·⌊(b+c)/4⌋ mod 2 (a generator of H³(Z/4; Z/2)).
        CoherentTwoGroup::skeletal("Z/4 twisted", z4, 2, |a, b, c| (a * ((b + c) / 4)) % 2).unwrap(),
    ];
    for t in &samples {
        let x = nerve_2group(t, 4).unwrap();
        let back = two_group_from_kan(&x).unwrap();
        assert!(skeletal_equivalent(t, &back).unwrap(), "{}", t.name);
    }
    // Twisted and untwisted are not equivalent.
    assert!(!skeletal_equivalent(&samples[3], &samples[4]).unwrap());
    assert!(!skeletal_equivalent(&samples[1], &samples[2]).unwrap());
}

#[test]
fn two_group_errors() {
    let z3: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
    let err = CoherentTwoGroup::skeletal("bad", z3, 2, |a, b, c| usize::from((a, b, c) == (1, 1, 1))).unwrap_err();
    assert!(err.to_string().contains("pentagon"), "{err}");
    // K(Z/2,1) has non-unique fillers in dimension 2 only, so it qualifies; Δ[1]-like sets do not.
    assert!(two_group_from_kan(&kz(2, 4)).is_ok());
    assert!(matches!(two_group_from_kan(&FinSimplicialSet::simplex(1, 4)), Err(SimpError::NotReduced(2))));
    // A set with π₃ ≠ 0 would violate uniqueness; the product of nerves stays a 2-group.
    let prod = kz(2, 4).product(&nerve_2group(&CoherentTwoGroup::crossed_module_cyclic(2), 4).unwrap());
    let t = two_group_from_kan(&prod).unwrap();
    assert_eq!((t.objects(), t.arrows.len()), (2, 4));
}

#[test]
fn pi_two_of_a_nerve_is_the_automorphism_group() {
    let x = nerve_2group(&CoherentTwoGroup::crossed_module_cyclic(3), 4).unwrap();
    assert!(x.pi_n(1).unwrap().is_trivial());
    assert_eq!(x.pi_n(2).unwrap().to_string(), "Z/3");
}

#[test]
fn truncation_homotopy_on_products() {
    let samples = vec![
        kz(2, 3).product(&nerve_2group(&CoherentTwoGroup::crossed_module_cyclic(3), 3).unwrap()),
        kz(3, 3).product(&nerve_2group(&CoherentTwoGroup::skeletal_z2_twisted(), 3).unwrap()),
    ];
    for x in &samples {
        let orders: Vec<usize> = (1..=2).map(|i| x.pi_n(i).unwrap().order()).collect();
        for n in 1..=2 {
            let le = x.truncate_at_most(n).unwrap();
            let lt = x.truncate_below(n + 1).unwrap();
            for i in 1..=2 {
                let expected = if i <= n { orders[i - 1] } else { 1 };
                assert_eq!(le.pi_n(i).unwrap().order(), expected, "{} τ≤{n} π{i}", x.name);
                assert_eq!(lt.pi_n(i).unwrap().order(), expected, "{} τ<{} π{i}", x.name, n + 1);
            }
        }
    }
}

#[test]
fn collapse_certificates_replay() {
    let horn: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]];
    let c = find_collapse(2, &horn).unwrap().unwrap();
    assert!(c.verify(&horn));
    let mut full = horn.clone();
    full.extend([vec![0, 2], vec![0, 1, 2]]);
    assert!(!c.verify(&full));
    let c = find_collapse(2, &full).unwrap().unwrap();
    assert!(c.verify(&full));
    let mut reordered = c.clone();
    reordered.steps.reverse();
    assert!(!reordered.verify(&full));
}
