//! The `S¹`-bundle model: a 2-simplex is edge data of a map `Δ² → SU(2)` plus
//! a fiber coordinate `b ∈ ℝ/ℤ`; four faces with a filling map form a
//! 3-simplex when their alternating fiber sum matches the Cartan period mod 1.

use std::sync::Arc;

use super::{check_unit, integrate_cells, Cell, Quat, SU2Map, StringError, VERTICES};

/// Samples per edge (plus one endpoint).
pub const EDGE_SAMPLES: usize = 16;

const EDGE_TOLERANCE: f64 = 1e-9;

/// Edge `e` of a triangle is opposite its vertex `e`.
const EDGE_ENDS: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct BundleTwoSimplex {
    pub edges: [Vec<Quat>; 3],
    b: f64,
}

fn max_deviation(a: &[Quat], b: &[Quat]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

fn sample_edge(f: impl Fn(f64) -> Result<Quat, StringError>) -> Result<Vec<Quat>, StringError> {
    (0..=EDGE_SAMPLES).map(|k| f(k as f64 / EDGE_SAMPLES as f64)).collect()
}

impl BundleTwoSimplex {
    /// Stores `b` reduced to `[0, 1)`; edges must be unit-valued and meet at
    /// the vertices.
    pub fn new(edges: [Vec<Quat>; 3], b: f64) -> Result<Self, StringError> {
        if !b.is_finite() {
            return Err(StringError::NonFinite);
        }
        for e in &edges {
            if e.len() != EDGE_SAMPLES + 1 {
                return Err(StringError::EdgeMismatch { face: 0, edge: 0 });
            }
            e.iter().try_for_each(check_unit)?;
        }
        // vertex 0: starts of edges 2, 1; vertex 1: end of 2, start of 0; vertex 2: ends of 1, 0
        let last = EDGE_SAMPLES;
        let meets = [(edges[2][0], edges[1][0], 1), (edges[2][last], edges[0][0], 0), (edges[1][last], edges[0][last], 0)];
        for (p, q, edge) in meets {
            if (p - q).norm() > EDGE_TOLERANCE {
                return Err(StringError::EdgeMismatch { face: 0, edge });
            }
        }
        Ok(BundleTwoSimplex { edges, b: b.rem_euclid(1.0) })
    }

    /// The `i`-th face of a map on `Δ³` with fiber coordinate `b`.
    pub fn face_of(f: &SU2Map, i: usize, b: f64) -> Result<Self, StringError> {
        let w: Vec<[f64; 3]> = (0..4).filter(|&k| k != i).map(|k| VERTICES[k]).collect();
        let edges = EDGE_ENDS.map(|(a, c)| {
            sample_edge(|s| f.eval(std::array::from_fn(|k| (1.0 - s) * w[a][k] + s * w[c][k])))
        });
        let [e0, e1, e2] = edges;
        Self::new([e0?, e1?, e2?], b)
    }

    /// Edges of the constant map at the identity.
    pub fn trivial_edges() -> [Vec<Quat>; 3] {
        std::array::from_fn(|_| vec![Quat::identity(); EDGE_SAMPLES + 1])
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The same point of the fiber with `b` replaced by `b + n`.
    pub fn shifted(&self, n: i64) -> Self {
        let _ = n;
        self.clone()
    }
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// `|b₀ − b₁ + b₂ − b₃ − ∫_{Δ³} f*η|` modulo 1.
pub fn cocycle_check(faces: &[BundleTwoSimplex; 4], filling: &SU2Map, order: usize) -> Result<f64, StringError> {
    for (i, face) in faces.iter().enumerate() {
        let expected = BundleTwoSimplex::face_of(filling, i, 0.0)?;
        for e in 0..3 {
            if max_deviation(&face.edges[e], &expected.edges[e]) > EDGE_TOLERANCE {
                return Err(StringError::EdgeMismatch { face: i, edge: e });
            }
        }
    }
    let alt = faces[0].b - faces[1].b + faces[2].b - faces[3].b;
    let period = super::cartan_period(filling, order)?;
    Ok(distance_to_integer(alt - period))
}

/// A map `Δ² × [0,1] → SU(2)` in coordinates `(t₁, t₂, s)`.
#[derive(Clone)]
pub struct PrismHomotopy {
    pub name: String,
    eval: Arc<dyn Fn([f64; 3]) -> Quat + Send + Sync>,
}

impl PrismHomotopy {
    pub fn new(name: &str, f: impl Fn([f64; 3]) -> Quat + Send + Sync + 'static) -> Self {
        PrismHomotopy { name: name.into(), eval: Arc::new(f) }
    }

    /// The constant homotopy of a map on `Δ²`.
    pub fn constant(f: impl Fn([f64; 2]) -> Quat + Send + Sync + 'static) -> Self {
        Self::new("constant", move |x| f([x[0], x[1]]))
    }

    /// `s ↦ F(·, 1 − s)`.
    pub fn reversed(&self) -> Self {
        let f = self.eval.clone();
        Self { name: format!("reverse {}", self.name), eval: Arc::new(move |x| f([x[0], x[1], 1.0 - x[2]])) }
    }

    fn edges_at(&self, s: f64) -> Result<[Vec<Quat>; 3], StringError> {
        let v = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let edges = EDGE_ENDS.map(|(a, c)| {
            sample_edge(|r| {
                let q = (self.eval)([(1.0 - r) * v[a][0] + r * v[c][0], (1.0 - r) * v[a][1] + r * v[c][1], s]);
                check_unit(&q)?;
                Ok(q)
            })
        });
        let [e0, e1, e2] = edges;
        Ok([e0?, e1?, e2?])
    }

    /// `∫_{Δ²×[0,1]} F*η`, orientation `dt₁dt₂ds`.
    pub fn period(&self, order: usize) -> Result<f64, StringError> {
        let f = self.eval.clone();
        let param: super::Param = Arc::new(|x: [f64; 3]| [x[0] * (1.0 - x[1]), x[0] * x[1], x[2]]);
        let p = param.clone();
        let cell = Cell { chart: Arc::new(move |x| f(p(x))), param, orientation: 1.0 };
        integrate_cells(&[cell], order)
    }
}

/// Whether `x` and `y` (same edges) are the same point of the bundle, given a
/// homotopy rel boundary between their underlying maps: the prism period must
/// equal `b_y − b_x` modulo 1.
pub fn class_equal(
    x: &BundleTwoSimplex,
    y: &BundleTwoSimplex,
    homotopy: &PrismHomotopy,
    order: usize,
    tolerance: f64,
) -> Result<bool, StringError> {
    for e in 0..3 {
        if max_deviation(&x.edges[e], &y.edges[e]) > EDGE_TOLERANCE {
            return Err(StringError::DifferentEdges);
        }
    }
    let start = homotopy.edges_at(0.0)?;
    for e in 0..3 {
        let d = max_deviation(&start[e], &x.edges[e]);
        if d > EDGE_TOLERANCE {
            return Err(StringError::BoundaryMoved(d));
        }
    }
    for k in 1..=EDGE_SAMPLES {
        let edges = homotopy.edges_at(k as f64 / EDGE_SAMPLES as f64)?;
        for e in 0..3 {
            let d = max_deviation(&edges[e], &start[e]);
            if d > EDGE_TOLERANCE {
                return Err(StringError::BoundaryMoved(d));
            }
        }
    }
    let p = homotopy.period(order)?;
    Ok(distance_to_integer(p - (y.b - x.b)) < tolerance)
}
