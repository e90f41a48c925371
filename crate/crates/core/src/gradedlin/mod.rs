//! Exact graded linear algebra: dense matrices, Smith normal form, homology of
//! two-term complexes, finitely generated abelian groups and the discreteness test
//! for finitely generated subgroups of real vector spaces.

mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

pub use matrix::{extend_basis, standard_basis, Echelon, Matrix};
pub use snf::{int_det, int_identity, int_matrix, int_mul, is_unimodular, smith_normal_form, IntMatrix, SmithForm};

use crate::scalar::{Scalar, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("composite of the two maps is nonzero ({0} nonzero entries)")]
    CompositionNonzero(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Dimensions of a nonnegatively graded vector space, with optional basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedVectorSpace {
    dims: BTreeMap<usize, usize>,
    labels: BTreeMap<usize, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(dims: impl IntoIterator<Item = (usize, usize)>) -> Self {
        GradedVectorSpace {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            labels: BTreeMap::new(),
        }
    }

    pub fn with_labels(mut self, degree: usize, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim(degree), "label count");
        self.labels.insert(degree, labels);
        self
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// One more than the highest nonzero degree (0 for the zero space).
    pub fn top(&self) -> usize {
        self.dims.keys().next_back().map_or(0, |d| d + 1)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn label(&self, degree: usize, index: usize) -> String {
        self.labels
            .get(&degree)
            .and_then(|l| l.get(index).cloned())
            .unwrap_or_else(|| format!("e{degree}_{index}"))
    }
}

/// Finitely generated abelian group `ℤ^rank ⊕ ⨁ ℤ/dᵢ` with `d₁ | d₂ | …`, `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Cokernel of an integer relation matrix (rows = relations, columns = generators).
    pub fn from_relations(generators: usize, relations: &IntMatrix) -> Self {
        if relations.is_empty() {
            return Self::free(generators);
        }
        let snf = smith_normal_form(relations);
        let factors = snf.invariant_factors();
        FGAbGroup {
            rank: generators - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Canonicalizes arbitrary cyclic orders into divisibility order.
    pub fn from_parts(rank: usize, cyclic_orders: &[BigInt]) -> Self {
        let n = cyclic_orders.len();
        let rel: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { cyclic_orders[i].abs() } else { BigInt::zero() }).collect())
            .collect();
        let tors = Self::from_relations(n, &rel);
        FGAbGroup {
            rank: rank + tors.rank,
            torsion: tors.torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the canonical presentation (free ones first).
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ker(d_out) / im(d_in)` with representative basis vectors.
#[derive(Debug, Clone)]
pub struct Homology {
    pub dim: usize,
    pub basis: Vec<Vec<Scalar>>,
}

/// Homology at the middle term of `A --d_in--> V --d_out--> B`.
pub fn two_term_homology(d_in: &Matrix, d_out: &Matrix) -> Result<Homology, LinAlgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinAlgError::Shape(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in);
    if !comp.is_zero() {
        let nz = (0..comp.rows())
            .map(|i| comp.row(i).iter().filter(|x| !x.is_zero()).count())
            .sum();
        return Err(LinAlgError::CompositionNonzero(nz));
    }
    let n = d_in.rows();
    let image = d_in.column_space();
    let kernel = d_out.kernel();
    let basis = extend_basis(n, &image, &kernel);
    Ok(Homology {
        dim: basis.len(),
        basis,
    })
}

/// Coordinates of vectors of `F^d` in `F^d / W`, using the complement of `W`
/// spanned by the leftmost standard basis vectors independent of `W`.
pub fn quotient_coordinates(
    d: usize,
    w: &[Vec<Scalar>],
    vectors: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>, LinAlgError> {
    let w_basis = Matrix::from_columns(d, w).column_space();
    let complement = extend_basis(d, &w_basis, &standard_basis(d));
    let mut full = w_basis.clone();
    full.extend(complement.iter().cloned());
    let change = Matrix::from_columns(d, &full)
        .inverse()
        .ok_or_else(|| LinAlgError::Shape("quotient basis is singular".into()))?;
    vectors
        .iter()
        .map(|v| {
            if v.len() != d {
                return Err(LinAlgError::Shape(format!("vector of length {} in dimension {d}", v.len())));
            }
            Ok(change.apply(v)[w_basis.len()..].to_vec())
        })
        .collect()
}

/// ℤ-rank of the subgroup of `F^d` generated by `vectors`: the rank over ℚ of
/// their coordinates in a ℚ-basis of the field.
pub fn integer_rank(vectors: &[Vec<Scalar>], field: &ScalarField) -> Result<usize, LinAlgError> {
    let basis = field.basis();
    let mut cols = Vec::new();
    for v in vectors {
        let mut col = Vec::new();
        for x in v {
            field.check(x)?;
            let coords = x.coordinates(&basis).expect("checked membership");
            col.extend(coords.into_iter().map(Scalar::from_rational));
        }
        cols.push(col);
    }
    let rows = cols.first().map_or(0, Vec::len);
    Ok(Matrix::from_columns(rows, &cols).rank())
}

/// Whether the subgroup generated by the images of `generators` in `ℝ^d / W` is
/// discrete. A finitely generated subgroup of a real vector space is discrete iff
/// its ℤ-rank equals the dimension of its real span; both are computed exactly.
pub fn subgroup_is_discrete(
    generators: &[Vec<Scalar>],
    w: &[Vec<Scalar>],
    field: &ScalarField,
) -> Result<bool, LinAlgError> {
    for x in generators.iter().chain(w).flatten() {
        field.check(x)?;
    }
    let Some(d) = generators.first().map(Vec::len).or_else(|| w.first().map(Vec::len)) else {
        return Ok(true);
    };
    let images = quotient_coordinates(d, w, generators)?;
    let dq = d - Matrix::from_columns(d, w).rank();
    let span = Matrix::from_columns(dq, &images).rank();
    Ok(integer_rank(&images, field)? == span)
}
