//! The bundled example documents. They are generated from the library
//! constructors by `corpus export` and shipped as files; reading uses the
//! directory (overridable with `LINFTYKAN_CORPUS_DIR`) and falls back to the
//! generated set when it is absent.

use std::path::PathBuf;

use linftykan::gradedlin::{FGAbGroup, Matrix};
use linftykan::homot::BoundaryData;
use linftykan::intl::random_mc;
use linftykan::linf::{abelian, build_end_example, contractible, heisenberg, lie_algebra, su2, StringLieTwoAlgebra};
use linftykan::simpset::{find_collapse, CoherentTwoGroup, FinSimplicialSet};
use linftykan::{Scalar, ScalarField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::docs::{form_json, AlgebraFile, CliError, ComplexDoc, TetrahedronDoc};

pub const ENV_DIR: &str = "LINFTYKAN_CORPUS_DIR";

pub fn dir() -> PathBuf {
    std::env::var_os(ENV_DIR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")))
}

/// Canonical file text of a document.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn named(mut l: linftykan::linf::LInftyAlgebra, name: &str) -> linftykan::linf::LInftyAlgebra {
    l.name = name.into();
    l
}

fn su2_group() -> BoundaryData {
    let mut b = BoundaryData::new("SU(2)", ScalarField::rationals());
    b.pi.insert(3, FGAbGroup::free(1));
    b.boundary.insert(2, Matrix::from_int_rows(&[&[1]]));
    b
}

fn complex(name: &str, n: usize, simplices: Vec<Vec<usize>>, certify: bool) -> Value {
    let collapse = if certify { find_collapse(n, &simplices).expect("valid complex") } else { None };
    let doc = ComplexDoc { schema: 1, kind: "complex".into(), name: name.into(), n, simplices, collapse };
    serde_json::to_value(doc).expect("documents serialize")
}

/// The corpus as generated from the constructors, sorted by name.
pub fn builtin() -> Vec<(String, Value)> {
    let alg = |l, group| AlgebraFile { algebra: l, group }.to_json();
    let str_su2 = named(
        StringLieTwoAlgebra::with_identity_pairing(su2(), Scalar::one()).build().expect("su2 pairing is invariant"),
        "str-su2",
    );
    let end = build_end_example(&Scalar::one(), &Scalar::sqrt(2)).expect("1 and √2 are independent");
    let mut end_group = BoundaryData::new("SU(2)×SU(2)", end.field().clone());
    end_group.pi.insert(3, FGAbGroup::free(2));
    end_group.boundary.insert(2, Matrix::from_rows(vec![vec![Scalar::sqrt(2), -Scalar::one()]]));
    // [e1,e2] = e3, [e2,e3] = e2: the Jacobiator on (e1,e2,e3) is e3.
    let bad = lie_algebra("jacobiator-counterexample", ScalarField::rationals(), 3, |i, j| match (i, j) {
        (0, 1) => unit(3, 2),
        (1, 2) => unit(3, 1),
        _ => vec![Scalar::zero(); 3],
    })
    .expect("structure constants in range");
    let h3 = heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h3_simplex = random_mc(&h3, 2, 2, &mut rng).expect("h3 is nilpotent");
    let vol = linftykan::forms::PolyForm::dt(2, 1).wedge(&linftykan::forms::PolyForm::dt(2, 2));
    let tetra = TetrahedronDoc {
        schema: 1,
        kind: "bundle-tetrahedron".into(),
        name: "tetrahedron-degree1".into(),
        map: "degree1".into(),
        b: [1.0, 0.0, 0.0, 0.0],
    };
    let mut kz2 = FinSimplicialSet::cyclic_classifying(2, 4);
    kz2.name = "K(Z/2,1)".into();
    let mut out: Vec<(String, Value)> = vec![
        ("abelian".into(), alg(named(abelian(&[0, 1]), "abelian"), None)),
        ("abelian-deg0".into(), alg(named(abelian(&[1]), "abelian-deg0"), None)),
        ("contractible".into(), alg(named(contractible(0, 1), "contractible"), None)),
        ("su2".into(), alg(named(su2(), "su2"), None)),
        ("heisenberg".into(), alg(named(h3.clone(), "heisenberg"), None)),
        ("str-su2".into(), alg(str_su2, Some(su2_group()))),
        ("end-1-sqrt2".into(), alg(named(end, "end-1-sqrt2"), Some(end_group))),
        ("jacobiator-counterexample".into(), alg(bad, None)),
        ("su2-group".into(), su2_group().to_json()),
        ("heisenberg-mc".into(), h3_simplex.to_json(&named(h3, "heisenberg"))),
        ("volume-form-2".into(), form_json(&vol)),
        ("kz2-1".into(), kz2.to_json()),
        ("two-group".into(), CoherentTwoGroup::skeletal_z2_twisted().to_json()),
        (
            "horn-2-1".into(),
            complex("horn-2-1", 2, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]], true),
        ),
        (
            "boundary-2".into(),
            complex("boundary-2", 2, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]], false),
        ),
        ("tetrahedron-degree1".into(), serde_json::to_value(tetra).expect("documents serialize")),
    ];
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Every `*.json` in the corpus directory, sorted by name, or the generated
/// set when the directory does not exist.
pub fn load() -> Result<Vec<(String, Value)>, CliError> {
    let d = dir();
    if !d.is_dir() {
        return Ok(builtin());
    }
    let read_err = |source| CliError::Io { path: d.display().to_string(), source };
    let mut out = Vec::new();
    for entry in std::fs::read_dir(&d).map_err(read_err)? {
        let path = entry.map_err(read_err)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        let v = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        out.push((name, v));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}
