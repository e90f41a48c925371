use linftykan::linf::{build_end_example, heisenberg, su2, LInftyAlgebra, LinfError, StringLieTwoAlgebra};
use linftykan::Scalar;
use serde_json::{json, Value};

fn doc(brackets: Value) -> Value {
    json!({"schema": 1, "kind": "linf", "name": "t", "scalars": "Q", "dims": {"0": 2, "1": 1}, "brackets": brackets})
}

#[test]
fn constructors_round_trip() {
    let str_su2 = StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().unwrap();
    let end = build_end_example(&Scalar::one(), &"sqrt2".parse().unwrap()).unwrap();
    for l in [su2(), heisenberg(), str_su2, end] {
        let v = l.to_json();
        let back = LInftyAlgebra::from_json(&v).unwrap();
        assert_eq!(back, l, "{}", l.name);
        assert_eq!(back.to_json(), v);
    }
}

#[test]
fn unsorted_inputs_pick_up_the_koszul_sign() {
    let a = LInftyAlgebra::from_json(&doc(json!([{"arity": 2, "inputs": [[0, 1], [0, 0]], "output": {"0": 1}}]))).unwrap();
    let b = LInftyAlgebra::from_json(&doc(json!([{"arity": 2, "inputs": [[0, 0], [0, 1]], "output": {"0": "-1"}}]))).unwrap();
    assert_eq!(a, b);
}

#[test]
fn malformed_documents_are_rejected() {
    let bad = [
        doc(json!([{"arity": 2, "inputs": [[0, 0], [0, 0]], "output": {"0": 1}}])),
        doc(json!([
            {"arity": 2, "inputs": [[0, 0], [0, 1]], "output": {"0": 1}},
            {"arity": 2, "inputs": [[0, 1], [0, 0]], "output": {"1": 1}}
        ])),
        doc(json!([{"arity": 3, "inputs": [[0, 0], [0, 1]], "output": {"0": 1}}])),
        doc(json!([{"arity": 2, "inputs": [[0, 0], [0, 1]], "output": {"5": 1}}])),
        doc(json!([{"arity": 2, "inputs": [[0, 0], [0, 1]], "output": {"0": "sqrt2"}}])),
        doc(json!([{"arity": 2, "inputs": [[0, 0], [0, 7]], "output": {"0": 1}}])),
        json!({"schema": 2, "kind": "linf", "name": "t", "scalars": "Q", "dims": {"0": 1}}),
        json!({"schema": 1, "kind": "form", "name": "t", "scalars": "Q", "dims": {"0": 1}}),
        json!({"schema": 1, "kind": "linf", "name": "t", "scalars": "Q", "dims": {"0": 1}, "extra": 0}),
        json!({"schema": 1, "kind": "linf", "name": "t", "scalars": "Q", "dims": {"0": 2}, "labels": {"0": ["x"]}}),
    ];
    for v in bad {
        assert!(LInftyAlgebra::from_json(&v).is_err(), "accepted {v}");
    }
}

#[test]
fn repeated_odd_inputs_are_allowed() {
    let v = json!({"schema": 1, "kind": "linf", "name": "t", "scalars": "Q", "dims": {"1": 1, "2": 1},
        "brackets": [{"arity": 2, "inputs": [[1, 0], [1, 0]], "output": {"0": 1}}]});
    assert!(LInftyAlgebra::from_json(&v).is_ok());
    let e = LInftyAlgebra::from_json(&doc(json!([{"arity": 2, "inputs": [[0, 1], [0, 1]], "output": {}}]))).unwrap_err();
    assert!(matches!(e, LinfError::Invariant { .. }), "{e}");
}
