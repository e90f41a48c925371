//! Floating-point model of the string 2-group over `SU(2)`: unit quaternions,
//! the left Maurer–Cartan form `θ = f⁻¹df`, the Cartan 3-form
//! `η = −⅙⟨[θ,θ],θ⟩` and its periods over 3-cells, and the `S¹`-bundle
//! cocycle model of the 2-truncation.
//!
//! Maps are unions of cells, each a smooth chart `[0,1]³ → SU(2)` together with
//! its parametrization of the domain. Periods use tensor Gauss–Legendre rules
//! in these cube coordinates; the cells of the simplex maps are Duffy
//! collapses of tetrahedra, so homogeneous singularities at the apex become
//! smooth.

mod bundle;
mod quadrature;

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{Matrix3, Quaternion, Vector3};
use thiserror::Error;

pub use bundle::{class_equal, cocycle_check, BundleTwoSimplex, PrismHomotopy};
pub use quadrature::gauss_legendre;

pub type Quat = Quaternion<f64>;

/// Scale of the invariant pairing (Euclidean inner product of quaternions)
/// making the Cartan 3-form integrate to 1 over `SU(2)`; the volume of the unit
/// 3-sphere is `2π²` and `⟨[θ₁,θ₂],θ₃⟩ = 2 vol`. Checked against [`calibrate`].
pub const PAIRING_SCALE: f64 = 1.0 / (4.0 * PI * PI);

pub const DEFAULT_ORDER: usize = 12;

/// Deviation from unit norm tolerated at sample points.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StringError {
    #[error("sample {value} is not a unit quaternion (norm {norm})")]
    NotUnit { value: String, norm: f64 },
    #[error("non-finite sample")]
    NonFinite,
    #[error("edge {edge} of face {face} does not match the filling map")]
    EdgeMismatch { face: usize, edge: usize },
    #[error("the two simplices have different edge data")]
    DifferentEdges,
    #[error("the homotopy moves the boundary (deviation {0})")]
    BoundaryMoved(f64),
    #[error("quadrature order must be positive")]
    Order,
    #[error("unknown map {0:?}")]
    UnknownMap(String),
}

pub type Chart = Arc<dyn Fn([f64; 3]) -> Quat + Send + Sync>;
pub type Param = Arc<dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync>;

/// A smooth piece `[0,1]³ → SU(2)` with its parametrization of the domain and
/// the sign relating cube orientation to the domain orientation.
#[derive(Clone)]
pub struct Cell {
    pub chart: Chart,
    pub param: Param,
    pub orientation: f64,
}

pub fn check_unit(q: &Quat) -> Result<(), StringError> {
    let n = q.norm();
    if !n.is_finite() || !q.coords.iter().all(|c| c.is_finite()) {
        return Err(StringError::NonFinite);
    }
    if (n - 1.0).abs() > UNIT_TOLERANCE {
        return Err(StringError::NotUnit { value: format!("{q}"), norm: n });
    }
    Ok(())
}

fn pure(v: Vector3<f64>) -> Quat {
    Quaternion::from_imag(v)
}

/// `exp` of the pure quaternion with vector part `v`.
pub fn exp_pure(v: Vector3<f64>) -> Quat {
    pure(v).exp()
}

const FD_STEP: f64 = 1e-3;

/// Fourth-order central difference of a chart along axis `i`.
fn partial(chart: &Chart, x: [f64; 3], i: usize) -> Quat {
    let at = |d: f64| {
        let mut y = x;
        y[i] += d;
        chart(y)
    };
    let h = FD_STEP;
    (at(-2.0 * h) - at(-h) * 8.0 + at(h) * 8.0 - at(2.0 * h)) * (1.0 / (12.0 * h))
}

/// `f*η` in cube coordinates at `x`: `−c·⟨[θ₁,θ₂],θ₃⟩`.
pub fn cartan_density(chart: &Chart, x: [f64; 3]) -> Result<f64, StringError> {
    let q = chart(x);
    check_unit(&q)?;
    let inv = q.conjugate();
    let th: Vec<Quat> = (0..3).map(|i| inv * partial(chart, x, i)).collect();
    let bracket = th[0] * th[1] - th[1] * th[0];
    let pairing = bracket.coords.dot(&th[2].coords);
    let v = -PAIRING_SCALE * pairing;
    if !v.is_finite() {
        return Err(StringError::NonFinite);
    }
    Ok(v)
}

/// `Σ_cells ± ∫_{[0,1]³} density`.
pub fn integrate_cells(cells: &[Cell], order: usize) -> Result<f64, StringError> {
    if order == 0 {
        return Err(StringError::Order);
    }
    let rule = gauss_legendre(order);
    let mut total = 0.0;
    for cell in cells {
        let mut sum = 0.0;
        for &(x1, w1) in &rule {
            for &(x2, w2) in &rule {
                for &(x3, w3) in &rule {
                    sum += w1 * w2 * w3 * cartan_density(&cell.chart, [x1, x2, x3])?;
                }
            }
        }
        total += cell.orientation * sum;
    }
    Ok(total)
}

/// Affine self-map of `R³` (coordinates `t₁,t₂,t₃` of `Δ³`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub linear: Matrix3<f64>,
    pub offset: Vector3<f64>,
}

impl Affine {
    /// The affine map sending the standard vertices `0, e₁, e₂, e₃` to `images`.
    pub fn from_vertices(images: [[f64; 3]; 4]) -> Self {
        let o = Vector3::from(images[0]);
        let cols: Vec<Vector3<f64>> = (1..4).map(|k| Vector3::from(images[k]) - o).collect();
        Affine { linear: Matrix3::from_columns(&cols), offset: o }
    }

    pub fn apply(&self, t: [f64; 3]) -> [f64; 3] {
        (self.linear * Vector3::from(t) + self.offset).into()
    }

    pub fn inverse(&self) -> Option<Affine> {
        let inv = self.linear.try_inverse()?;
        Some(Affine { linear: inv, offset: -(inv * self.offset) })
    }

    pub fn orientation(&self) -> f64 {
        self.linear.determinant().signum()
    }
}

const VERTICES: [[f64; 3]; 4] = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
const BARYCENTER: [f64; 3] = [0.25, 0.25, 0.25];

fn barycentric(t: [f64; 3]) -> [f64; 4] {
    [1.0 - t[0] - t[1] - t[2], t[0], t[1], t[2]]
}

/// Duffy parametrization of the tetrahedron with apex `a` over the face
/// `(b, c, d)`; the first cube coordinate is the radial parameter from `a`.
fn duffy(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> Param {
    Arc::new(move |x: [f64; 3]| {
        let u = [x[0] * (1.0 - x[1]), x[0] * x[1] * (1.0 - x[2]), x[0] * x[1] * x[2]];
        std::array::from_fn(|k| a[k] + u[0] * (b[k] - a[k]) + u[1] * (c[k] - a[k]) + u[2] * (d[k] - a[k]))
    })
}

fn tetra_orientation(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> f64 {
    let col = |p: [f64; 3]| Vector3::new(p[0] - a[0], p[1] - a[1], p[2] - a[2]);
    Matrix3::from_columns(&[col(b), col(c), col(d)]).determinant().signum()
}

/// A map `Δ³ → SU(2)`: a pointwise evaluator (for edges and boundary checks)
/// and a decomposition into smooth cells (for periods).
#[derive(Clone)]
pub struct SU2Map {
    pub name: String,
    eval: Arc<dyn Fn([f64; 3]) -> Quat + Send + Sync>,
    cells: Vec<Cell>,
}

impl std::fmt::Debug for SU2Map {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SU2Map({}, {} cells)", self.name, self.cells.len())
    }
}

impl SU2Map {
    /// A map given by one smooth formula on all of `Δ³`.
    pub fn smooth(name: &str, f: impl Fn([f64; 3]) -> Quat + Send + Sync + 'static) -> Self {
        let f: Arc<dyn Fn([f64; 3]) -> Quat + Send + Sync> = Arc::new(f);
        let [v0, v1, v2, v3] = VERTICES;
        let param = duffy(v0, v1, v2, v3);
        let chart_f = f.clone();
        let chart_p = param.clone();
        SU2Map {
            name: name.into(),
            eval: f,
            cells: vec![Cell {
                chart: Arc::new(move |x| chart_f(chart_p(x))),
                param,
                orientation: tetra_orientation(v0, v1, v2, v3),
            }],
        }
    }

    pub fn constant(q: Quat) -> Self {
        Self::smooth("constant", move |_| q)
    }

    /// `t ↦ −exp(−π ρ(t) n̂(t))` with `n̂` the direction from the barycenter and
    /// `ρ` the gauge function of `Δ³` about it (`1` on `∂Δ³`), so `∂Δ³ ↦ 1`.
    /// Smooth on each of the four cones from the barycenter over a facet.
    pub fn degree_one() -> Self {
        fn cone(i: usize, t: [f64; 3]) -> Quat {
            let v = Vector3::new(t[0] - BARYCENTER[0], t[1] - BARYCENTER[1], t[2] - BARYCENTER[2]);
            let r = v.norm();
            let rho = 1.0 - 4.0 * barycentric(t)[i];
            let w = if r == 0.0 { Vector3::zeros() } else { v * (PI * rho / r) };
            -exp_pure(-w)
        }
        let eval = Arc::new(|t: [f64; 3]| {
            let l = barycentric(t);
            let i = (0..4).min_by(|&a, &b| l[a].total_cmp(&l[b])).expect("four facets");
            cone(i, t)
        });
        // Each cone is split into three cells around the facet center, in
        // polar-type Duffy coordinates centered there.
        let mut cells = Vec::new();
        for i in 0..4 {
            let face: Vec<[f64; 3]> = (0..4).filter(|&k| k != i).map(|k| VERTICES[k]).collect();
            let center: [f64; 3] = std::array::from_fn(|k| (face[0][k] + face[1][k] + face[2][k]) / 3.0);
            for (a, c) in [(0, 1), (1, 2), (2, 0)] {
                let param = duffy(BARYCENTER, center, face[a], face[c]);
                let p = param.clone();
                // ρ equals the radial cube coordinate; writing the chart through
                // it keeps it smooth (odd) across the apex.
                let chart = move |x: [f64; 3]| {
                    let y = Vector3::from(p([1.0, x[1], x[2]])) - Vector3::from(BARYCENTER);
                    -exp_pure(-y.normalize() * (PI * x[0]))
                };
                cells.push(Cell {
                    chart: Arc::new(chart),
                    param,
                    orientation: tetra_orientation(BARYCENTER, center, face[a], face[c]),
                });
            }
        }
        SU2Map { name: "degree1".into(), eval, cells }
    }

    /// `f ∘ a` for an affine automorphism `a` of `Δ³`.
    pub fn precompose(&self, name: &str, a: Affine) -> Self {
        let inv = a.inverse().expect("affine automorphism");
        let f = self.eval.clone();
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let p = c.param.clone();
                Cell {
                    chart: c.chart.clone(),
                    param: Arc::new(move |x| inv.apply(p(x))),
                    orientation: c.orientation * a.orientation(),
                }
            })
            .collect();
        SU2Map { name: name.into(), eval: Arc::new(move |t| f(a.apply(t))), cells }
    }

    /// The degree-one model with two barycentric coordinates swapped.
    pub fn degree_one_reversed() -> Self {
        Self::degree_one().precompose("degree1-reversed", Affine::from_vertices([VERTICES[0], VERTICES[2], VERTICES[1], VERTICES[3]]))
    }

    /// `k` copies of a boundary-collapsing map glued along the subdivision of
    /// the edge `(0,1)` into `k` segments.
    pub fn concat(&self, k: usize) -> Self {
        assert!(k > 0, "at least one copy");
        let kf = k as f64;
        let piece = move |t: [f64; 3]| -> (usize, Affine) {
            let r = 1.0 - t[1] - t[2];
            let m = if r <= 0.0 { 0 } else { ((kf * t[0] / r).floor() as usize).min(k - 1) };
            let pm = [m as f64 / kf, 0.0, 0.0];
            let pn = [(m + 1) as f64 / kf, 0.0, 0.0];
            let to_sub = Affine::from_vertices([pm, pn, VERTICES[2], VERTICES[3]]);
            (m, to_sub.inverse().expect("nondegenerate piece"))
        };
        let f = self.eval.clone();
        let mut cells = Vec::new();
        for m in 0..k {
            let pm = [m as f64 / kf, 0.0, 0.0];
            let pn = [(m + 1) as f64 / kf, 0.0, 0.0];
            let to_sub = Affine::from_vertices([pm, pn, VERTICES[2], VERTICES[3]]);
            for c in &self.cells {
                let p = c.param.clone();
                cells.push(Cell {
                    chart: c.chart.clone(),
                    param: Arc::new(move |x| to_sub.apply(p(x))),
                    orientation: c.orientation * to_sub.orientation(),
                });
            }
        }
        SU2Map {
            name: format!("concat-{k}({})", self.name),
            eval: Arc::new(move |t| {
                let (_, a) = piece(t);
                f(a.apply(t))
            }),
            cells,
        }
    }

    /// `t ↦ g·f(t)`.
    pub fn left_translate(&self, g: Quat) -> Self {
        let f = self.eval.clone();
        SU2Map {
            name: format!("g·{}", self.name),
            eval: Arc::new(move |t| g * f(t)),
            cells: self
                .cells
                .iter()
                .map(|c| {
                    let ch = c.chart.clone();
                    Cell { chart: Arc::new(move |x| g * ch(x)), param: c.param.clone(), orientation: c.orientation }
                })
                .collect(),
        }
    }

    /// Built-in maps by name: `constant`, `degree1`, `degree1-reversed`, `concat-K`.
    pub fn named(name: &str) -> Result<Self, StringError> {
        match name {
            "constant" => Ok(Self::constant(Quat::identity())),
            "degree1" => Ok(Self::degree_one()),
            "degree1-reversed" => Ok(Self::degree_one_reversed()),
            _ => name
                .strip_prefix("concat-")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k > 0)
                .map(|k| Self::degree_one().concat(k))
                .ok_or_else(|| StringError::UnknownMap(name.into())),
        }
    }

    pub fn eval(&self, t: [f64; 3]) -> Result<Quat, StringError> {
        let q = (self.eval)(t);
        check_unit(&q)?;
        Ok(q)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Largest deviation from `1` at sample points of `∂Δ³`.
    pub fn boundary_deviation(&self, samples: usize) -> Result<f64, StringError> {
        let mut worst: f64 = 0.0;
        let n = samples.max(1);
        for i in 0..4 {
            for a in 0..=n {
                for b in 0..=n - a {
                    // point of facet i with barycentric weights (a, b, n−a−b)/n on its vertices
                    let face: Vec<[f64; 3]> = (0..4).filter(|&k| k != i).map(|k| VERTICES[k]).collect();
                    let w = [a as f64 / n as f64, b as f64 / n as f64, (n - a - b) as f64 / n as f64];
                    let t: [f64; 3] = std::array::from_fn(|k| w[0] * face[0][k] + w[1] * face[1][k] + w[2] * face[2][k]);
                    worst = worst.max((self.eval(t)? - Quat::identity()).norm());
                }
            }
        }
        Ok(worst)
    }
}

/// `∫_{Δ³} f*η`.
pub fn cartan_period(f: &SU2Map, order: usize) -> Result<f64, StringError> {
    integrate_cells(&f.cells, order)
}

/// A 2-form given on the cells of a map, in cube coordinates: components on
/// `(dx₁dx₂, dx₁dx₃, dx₂dx₃)`.
pub trait TwoForm {
    fn on_cell(&self, cell: usize, x: [f64; 3]) -> Result<[f64; 3], StringError>;
}

pub struct ZeroTwoForm;

impl TwoForm for ZeroTwoForm {
    fn on_cell(&self, _: usize, _: [f64; 3]) -> Result<[f64; 3], StringError> {
        Ok([0.0; 3])
    }
}

/// The cone primitive of `f*η` from each cell's apex: `β = G dx₂dx₃` with
/// `G(x) = ∫₀^{x₁} f*η(σ, x₂, x₃) dσ`. On the Duffy cells of a simplex map this
/// is the radial homotopy from the apex in simplex coordinates.
pub struct RadialPrimitive<'a> {
    pub map: &'a SU2Map,
    pub order: usize,
}

impl TwoForm for RadialPrimitive<'_> {
    fn on_cell(&self, cell: usize, x: [f64; 3]) -> Result<[f64; 3], StringError> {
        let chart = &self.map.cells[cell].chart;
        let mut g = 0.0;
        for (s, w) in gauss_legendre(self.order) {
            g += w * x[0] * cartan_density(chart, [s * x[0], x[1], x[2]])?;
        }
        Ok([0.0, 0.0, g])
    }
}

fn jacobian(param: &Param, x: [f64; 3]) -> f64 {
    let h = 1e-6;
    let cols: Vec<Vector3<f64>> = (0..3)
        .map(|i| {
            let (mut a, mut b) = (x, x);
            a[i] += h;
            b[i] -= h;
            (Vector3::from(param(a)) - Vector3::from(param(b))) / (2.0 * h)
        })
        .collect();
    Matrix3::from_columns(&cols).determinant()
}

/// Largest `|dβ − f*η|` over quadrature nodes, as densities in simplex
/// coordinates; `dβ` by fourth-order central differences.
pub fn mc_pair_residual(f: &SU2Map, beta: &dyn TwoForm, order: usize) -> Result<f64, StringError> {
    if order == 0 {
        return Err(StringError::Order);
    }
    let h = FD_STEP;
    let rule = gauss_legendre(order);
    let mut worst: f64 = 0.0;
    for (ci, cell) in f.cells.iter().enumerate() {
        for &(x1, _) in &rule {
            for &(x2, _) in &rule {
                for &(x3, _) in &rule {
                    let x = [x1, x2, x3];
                    let d = |i: usize, comp: usize| -> Result<f64, StringError> {
                        let at = |step: f64| -> Result<f64, StringError> {
                            let mut y = x;
                            y[i] += step;
                            Ok(beta.on_cell(ci, y)?[comp])
                        };
                        Ok((at(-2.0 * h)? - 8.0 * at(-h)? + 8.0 * at(h)? - at(2.0 * h)?) / (12.0 * h))
                    };
                    let d_beta = d(0, 2)? - d(1, 1)? + d(2, 0)?;
                    let eta = cartan_density(&cell.chart, x)?;
                    let jac = jacobian(&cell.param, x).abs();
                    worst = worst.max((d_beta - eta).abs() / jac);
                }
            }
        }
    }
    Ok(worst)
}

/// The pairing scale obtained by integrating `⟨[θ₁,θ₂],θ₃⟩` over `SU(2)` in
/// Hopf-type coordinates and normalizing the total to 1.
pub fn calibrate(order: usize) -> Result<f64, StringError> {
    let chart: Chart = Arc::new(|x: [f64; 3]| {
        let (chi, th, ph) = (PI * x[0], PI * x[1], 2.0 * PI * x[2]);
        Quaternion::new(chi.cos(), chi.sin() * th.cos(), chi.sin() * th.sin() * ph.cos(), chi.sin() * th.sin() * ph.sin())
    });
    let cell = Cell { chart, param: Arc::new(|x| x), orientation: 1.0 };
    let total = integrate_cells(&[cell], order)? / PAIRING_SCALE;
    Ok(1.0 / total.abs())
}
