//! Finite simplicial sets given by face and degeneracy tables up to a fixed
//! dimension: Kan and unique-filler checks by exhaustive horn enumeration,
//! homotopy groups of reduced Kan sets, Postnikov truncations, collapses of
//! subcomplexes of a simplex, and nerves of coherent 2-groups.

mod collapse;
mod json;
mod twogroup;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradedlin::{FGAbGroup, IntMatrix};

pub use collapse::{find_collapse, Collapse, CollapseStep};
pub use twogroup::{nerve_2group, skeletal_equivalent, two_group_from_kan, CoherentTwoGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimpError {
    #[error("simplicial identity {0} fails")]
    Identity(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("dimension {needed} needed but the set is only given up to {available}")]
    Truncated { needed: usize, available: usize },
    #[error("not Kan: horn Λ[{m},{j}] with facets {facets:?} has no filler")]
    NotKan { m: usize, j: usize, facets: Vec<usize> },
    #[error("the set is not reduced ({0} vertices)")]
    NotReduced(usize),
    #[error("horn Λ[{m},{j}] with facets {facets:?} has {count} fillers, expected exactly one")]
    NonUniqueFiller { m: usize, j: usize, facets: Vec<usize>, count: usize },
    #[error("the group law depends on the chosen filler")]
    IllDefined,
    #[error("2-group axiom fails: {0}")]
    TwoGroup(String),
}

/// Simplices `X_0 … X_N` with labels, `faces[m][x][i] = d_i x` (for `m ≥ 1`; the
/// entry for `m = 0` is empty) and `degens[m][x][i] = s_i x` (for `m < N`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSimplicialSet {
    pub name: String,
    pub labels: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
    /// Whether the set is known to be determined by its `N`-skeleton through
    /// horn fillers (informational; all checks stop at `N`).
    #[serde(default)]
    pub coskeletal: bool,
}

/// Outcome of a Kan check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KanReport {
    pub kan: bool,
    /// `(m, j, facets)` of the first horn without a filler.
    pub counterexample: Option<(usize, usize, Vec<usize>)>,
}

/// Finite group given by its multiplication table on classes `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    /// A representing simplex for each class.
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Invariant factors, when the group is abelian.
    pub fn abelian_invariants(&self) -> Option<FGAbGroup> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order();
        let mut rel: IntMatrix = Vec::new();
        let row = |pairs: &[(usize, i64)]| {
            let mut r = vec![num::BigInt::from(0); n];
            for &(i, c) in pairs {
                r[i] += c;
            }
            r
        };
        rel.push(row(&[(self.identity, 1)]));
        for a in 0..n {
            for b in a..n {
                rel.push(row(&[(a, 1), (b, 1), (self.mul[a][b], -1)]));
            }
        }
        Some(FGAbGroup::from_relations(n, &rel))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.abelian_invariants() {
            Some(g) => write!(f, "{g}"),
            None => write!(f, "non-abelian group of order {}", self.order()),
        }
    }
}

/// Vertex subsets of `[m]` of the given size, lexicographic.
fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            rec(v + 1, m, size, cur, out);
            cur.pop();
        }
    }
    rec(0, m, size, &mut cur, &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl FinSimplicialSet {
    /// Builds and validates a simplicial set from its tables.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SimpError> {
        let x = FinSimplicialSet {
            name: name.into(),
            labels,
            faces,
            degens,
            coskeletal: false,
        };
        x.validate()?;
        Ok(x)
    }

    /// Top dimension `N`.
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn count(&self, m: usize) -> usize {
        self.labels.get(m).map_or(0, Vec::len)
    }

    pub fn face(&self, m: usize, x: usize, i: usize) -> usize {
        self.faces[m][x][i]
    }

    pub fn degen(&self, m: usize, x: usize, i: usize) -> usize {
        self.degens[m][x][i]
    }

    pub fn is_reduced(&self) -> bool {
        self.count(0) == 1
    }

    /// Restriction of `x ∈ X_m` to the face spanned by the sorted vertex set `keep`.
    pub fn restrict(&self, m: usize, x: usize, keep: &[usize]) -> usize {
        let mut cur = x;
        let mut dim = m;
        for v in (0..=m).rev() {
            if !keep.contains(&v) {
                cur = self.face(dim, cur, v);
                dim -= 1;
            }
        }
        cur
    }

    /// The basepoint `s₀ⁿ(*)` in each dimension, `*` = vertex 0.
    pub fn base(&self, m: usize) -> usize {
        let mut b = 0;
        for k in 0..m {
            b = self.degen(k, b, 0);
        }
        b
    }

    pub fn validate(&self) -> Result<(), SimpError> {
        let n = self.labels.len();
        if n == 0 {
            return Err(SimpError::Table("no vertices".into()));
        }
        if self.faces.len() != n || self.degens.len() != n {
            return Err(SimpError::Table("faces/degeneracies must have one table per dimension".into()));
        }
        for m in 0..n {
            let cnt = self.count(m);
            let expect_faces = if m == 0 { 0 } else { cnt };
            if self.faces[m].len() != expect_faces {
                return Err(SimpError::Table(format!("face table in dimension {m} has {} rows", self.faces[m].len())));
            }
            for row in &self.faces[m] {
                if row.len() != m + 1 || row.iter().any(|&y| y >= self.count(m - 1)) {
                    return Err(SimpError::Table(format!("bad face row {row:?} in dimension {m}")));
                }
            }
            let expect_degens = if m + 1 < n { cnt } else { 0 };
            if self.degens[m].len() != expect_degens {
                return Err(SimpError::Table(format!("degeneracy table in dimension {m} has {} rows", self.degens[m].len())));
            }
            for row in &self.degens[m] {
                if row.len() != m + 1 || row.iter().any(|&y| y >= self.count(m + 1)) {
                    return Err(SimpError::Table(format!("bad degeneracy row {row:?} in dimension {m}")));
                }
            }
        }
        let top = n - 1;
        for m in 0..=top {
            for x in 0..self.count(m) {
                if m >= 2 {
                    for j in 0..=m {
                        for i in 0..j {
                            if self.face(m - 1, self.face(m, x, j), i) != self.face(m - 1, self.face(m, x, i), j - 1) {
                                return Err(SimpError::Identity(format!("d{i}d{j} = d{}d{i} on X_{m}[{x}]", j - 1)));
                            }
                        }
                    }
                }
                if m < top {
                    for j in 0..=m {
                        let s = self.degen(m, x, j);
                        for i in 0..=m + 1 {
                            let lhs = self.face(m + 1, s, i);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if i < j {
                                lhs == self.degen(m - 1, self.face(m, x, i), j - 1)
                            } else {
                                lhs == self.degen(m - 1, self.face(m, x, i - 1), j)
                            };
                            if !ok {
                                return Err(SimpError::Identity(format!("d{i}s{j} on X_{m}[{x}]")));
                            }
                        }
                        if m + 1 < top {
                            for i in 0..=j {
                                if self.degen(m + 1, s, i) != self.degen(m + 1, self.degen(m, x, i), j + 1) {
                                    return Err(SimpError::Identity(format!("s{i}s{j} on X_{m}[{x}]")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a simplicial set from simplices given as arbitrary keys with face and
    /// degeneracy functions on keys.
    fn from_keys<K: Clone + Eq + std::hash::Hash + fmt::Debug>(
        name: impl Into<String>,
        simplices: Vec<Vec<K>>,
        label: impl Fn(&K) -> String,
        face: impl Fn(usize, &K, usize) -> K,
        degen: impl Fn(usize, &K, usize) -> K,
    ) -> Result<Self, SimpError> {
        let index: Vec<HashMap<K, usize>> = simplices
            .iter()
            .map(|xs| xs.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let top = simplices.len() - 1;
        let lookup = |m: usize, k: &K| {
            index[m]
                .get(k)
                .copied()
                .ok_or_else(|| SimpError::Table(format!("simplex {k:?} missing from dimension {m}")))
        };
        let mut faces = vec![Vec::new(); top + 1];
        let mut degens = vec![Vec::new(); top + 1];
        for m in 0..=top {
            for k in &simplices[m] {
                if m > 0 {
                    faces[m].push((0..=m).map(|i| lookup(m - 1, &face(m, k, i))).collect::<Result<_, _>>()?);
                }
                if m < top {
                    degens[m].push((0..=m).map(|i| lookup(m + 1, &degen(m, k, i))).collect::<Result<_, _>>()?);
                }
            }
        }
        let labels = simplices.iter().map(|xs| xs.iter().map(&label).collect()).collect();
        Self::new(name, labels, faces, degens)
    }

    /// One simplex in every dimension.
    pub fn point(top: usize) -> Self {
        Self::from_keys("point", vec![vec![()]; top + 1], |_| "*".into(), |_, _, _| (), |_, _, _| ()).expect("point")
    }

    /// The subcomplex of `Δ[n]` whose nondegenerate simplices are the given vertex
    /// sets (closed under faces is required), with degenerate simplices up to `top`.
    pub fn subcomplex(name: &str, n: usize, faces: &[Vec<usize>], top: usize) -> Result<Self, SimpError> {
        let allowed: std::collections::HashSet<Vec<usize>> = faces
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        for f in &allowed {
            if f.iter().any(|&v| v > n) {
                return Err(SimpError::Table(format!("vertex set {f:?} outside Δ[{n}]")));
            }
            for skip in 0..f.len() {
                if f.len() > 1 {
                    let mut g = f.clone();
                    g.remove(skip);
                    if !allowed.contains(&g) {
                        return Err(SimpError::Table(format!("{f:?} is present but its face {g:?} is not")));
                    }
                }
            }
        }
        // m-simplices: nondecreasing sequences of length m+1 with allowed vertex set.
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut seqs: Vec<Vec<usize>> = (0..=n).map(|v| vec![v]).collect();
        for _ in 0..=top {
            let keep: Vec<Vec<usize>> = seqs
                .iter()
                .filter(|s| {
                    let mut v = (*s).clone();
                    v.dedup();
                    allowed.contains(&v)
                })
                .cloned()
                .collect();
            simplices.push(keep);
            seqs = seqs
                .iter()
                .flat_map(|s| {
                    let last = *s.last().expect("nonempty");
                    (last..=n).map(move |v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        Self::from_keys(
            name,
            simplices,
            |s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(""),
            |_, s, i| {
                let mut t = s.clone();
                t.remove(i);
                t
            },
            |_, s, i| {
                let mut t = s.clone();
                t.insert(i, s[i]);
                t
            },
        )
    }

    /// `Δ[n]` up to dimension `top`.
    pub fn simplex(n: usize, top: usize) -> Self {
        let all: Vec<Vec<usize>> = (1..=n + 1).flat_map(|k| subsets(n, k)).collect();
        Self::subcomplex(&format!("Δ[{n}]"), n, &all, top).expect("full simplex")
    }

    /// The horn `Λ[n, j]`.
    pub fn horn(n: usize, j: usize, top: usize) -> Result<Self, SimpError> {
        let faces: Vec<Vec<usize>> = (1..=n + 1)
            .flat_map(|k| subsets(n, k))
            .filter(|f| f.len() <= n && !(f.len() == n && !f.contains(&j)))
            .collect();
        Self::subcomplex(&format!("Λ[{n},{j}]"), n, &faces, top)
    }

    /// The boundary `∂Δ[n]`.
    pub fn boundary(n: usize, top: usize) -> Result<Self, SimpError> {
        let faces: Vec<Vec<usize>> = (1..=n).flat_map(|k| subsets(n, k)).collect();
        Self::subcomplex(&format!("∂Δ[{n}]"), n, &faces, top)
    }

    /// Nerve of a finite group given by its multiplication table (identity = 0).
    pub fn classifying(name: &str, mul: &[Vec<usize>], top: usize) -> Result<Self, SimpError> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n) || (0..n).any(|g| mul[0][g] != g || mul[g][0] != g) {
            return Err(SimpError::Table("group table must be square with identity 0".into()));
        }
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        for _ in 1..=top {
            let prev = simplices.last().expect("nonempty");
            simplices.push(
                prev.iter()
                    .flat_map(|s| {
                        (0..n).map(move |g| {
                            let mut t = s.clone();
                            t.push(g);
                            t
                        })
                    })
                    .collect(),
            );
        }
        Self::from_keys(
            name,
            simplices,
            |s| format!("({})", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
            |m, s, i| {
                let mut t = s.clone();
                if i == 0 {
                    t.remove(0);
                } else if i == m {
                    t.pop();
                } else {
                    let g = mul[t[i - 1]][t[i]];
                    t[i - 1] = g;
                    t.remove(i);
                }
                t
            },
            |_, s, i| {
                let mut t = s.clone();
                t.insert(i, 0);
                t
            },
        )
    }

    /// `K(ℤ/n, 1)`.
    pub fn cyclic_classifying(n: usize, top: usize) -> Self {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::classifying(&format!("K(Z/{n},1)"), &mul, top).expect("cyclic group")
    }

    /// Levelwise product.
    pub fn product(&self, other: &Self) -> Self {
        let top = self.top().min(other.top());
        let simplices: Vec<Vec<(usize, usize)>> = (0..=top)
            .map(|m| (0..self.count(m)).flat_map(|a| (0..other.count(m)).map(move |b| (a, b))).collect())
            .collect();
        Self::from_keys(
            format!("{}×{}", self.name, other.name),
            simplices,
            |&(a, b)| format!("{a}|{b}"),
            |m, &(a, b), i| (self.face(m, a, i), other.face(m, b, i)),
            |m, &(a, b), i| (self.degen(m, a, i), other.degen(m, b, i)),
        )
        .map(|mut x| {
            for (m, row) in x.labels.iter_mut().enumerate() {
                for (k, l) in row.iter_mut().enumerate() {
                    let (a, b) = (k / other.count(m), k % other.count(m));
                    *l = format!("({},{})", self.labels[m][a], other.labels[m][b]);
                }
            }
            x
        })
        .expect("product of simplicial sets")
    }

    /// Every horn `Λ[m, j] → X` as the list of its facets (`j` omitted).
    pub fn horns(&self, m: usize, j: usize) -> Vec<Vec<usize>> {
        let idx: Vec<usize> = (0..=m).filter(|&i| i != j).collect();
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        self.horn_rec(m, &idx, &mut cur, &mut out);
        out
    }

    fn horn_rec(&self, m: usize, idx: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let pos = cur.len();
        if pos == idx.len() {
            out.push(cur.clone());
            return;
        }
        let k = idx[pos];
        for y in 0..self.count(m - 1) {
            let ok = m < 2
                || idx[..pos]
                    .iter()
                    .zip(cur.iter())
                    .all(|(&i, &yi)| self.face(m - 1, y, i) == self.face(m - 1, yi, k - 1));
            if ok {
                cur.push(y);
                self.horn_rec(m, idx, cur, out);
                cur.pop();
            }
        }
    }

    /// Simplices of `X_m` grouped by their horn restriction (facets other than `j`).
    fn filler_index(&self, m: usize, j: usize) -> HashMap<Vec<usize>, Vec<usize>> {
        let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for x in 0..self.count(m) {
            let key: Vec<usize> = (0..=m).filter(|&i| i != j).map(|i| self.face(m, x, i)).collect();
            map.entry(key).or_default().push(x);
        }
        map
    }

    /// All fillers of a horn given by its facets.
    pub fn fillers(&self, m: usize, j: usize, facets: &[usize]) -> Vec<usize> {
        (0..self.count(m))
            .filter(|&x| (0..=m).filter(|&i| i != j).zip(facets).all(|(i, &y)| self.face(m, x, i) == y))
            .collect()
    }

    /// Filler existence for every horn of dimension `≤ up_to`.
    pub fn is_kan(&self, up_to: usize) -> Result<KanReport, SimpError> {
        if up_to > self.top() {
            return Err(SimpError::Truncated { needed: up_to, available: self.top() });
        }
        for m in 1..=up_to {
            for j in 0..=m {
                let index = self.filler_index(m, j);
                for h in self.horns(m, j) {
                    if !index.contains_key(&h) {
                        return Ok(KanReport {
                            kan: false,
                            counterexample: Some((m, j, h)),
                        });
                    }
                }
            }
        }
        Ok(KanReport {
            kan: true,
            counterexample: None,
        })
    }

    /// Whether every horn of dimension `m` with `n < m ≤ up_to` has exactly one filler.
    pub fn unique_fillers_above(&self, n: usize, up_to: usize) -> Result<Result<(), SimpError>, SimpError> {
        if up_to > self.top() {
            return Err(SimpError::Truncated { needed: up_to, available: self.top() });
        }
        for m in n + 1..=up_to {
            for j in 0..=m {
                let index = self.filler_index(m, j);
                for h in self.horns(m, j) {
                    let count = index.get(&h).map_or(0, Vec::len);
                    if count != 1 {
                        return Ok(Err(SimpError::NonUniqueFiller { m, j, facets: h, count }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    fn require_kan(&self, up_to: usize) -> Result<(), SimpError> {
        let report = self.is_kan(up_to)?;
        match report.counterexample {
            Some((m, j, facets)) => Err(SimpError::NotKan { m, j, facets }),
            None => Ok(()),
        }
    }

    /// `π_n` of a reduced Kan set: spheres `d_i x = *` modulo `d₀y ∼ d₁y` for
    /// `y` with `d_i y = *` (`i > 1`); the product of `[x]` and `[x′]` is `d₁` of
    /// any filler of `Λ[n+1, 1]` with `d₂ = x`, `d₀ = x′` and `*` elsewhere.
    pub fn pi_n(&self, n: usize) -> Result<FiniteGroup, SimpError> {
        if !self.is_reduced() {
            return Err(SimpError::NotReduced(self.count(0)));
        }
        if n == 0 {
            return Ok(FiniteGroup { mul: vec![vec![0]], identity: 0, representatives: vec![0] });
        }
        self.require_kan(n + 1)?;
        let b_lo = self.base(n - 1);
        let b = self.base(n);
        let spheres: Vec<usize> = (0..self.count(n))
            .filter(|&x| (0..=n).all(|i| self.face(n, x, i) == b_lo))
            .collect();
        let pos: HashMap<usize, usize> = spheres.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut uf = UnionFind::new(spheres.len());
        for y in 0..self.count(n + 1) {
            if (2..=n + 1).all(|i| self.face(n + 1, y, i) == b) {
                if let (Some(&a), Some(&c)) = (pos.get(&self.face(n + 1, y, 0)), pos.get(&self.face(n + 1, y, 1))) {
                    uf.union(a, c);
                }
            }
        }
        let mut class_of = vec![0; spheres.len()];
        let mut reps: Vec<usize> = Vec::new();
        let mut root_class: BTreeMap<usize, usize> = BTreeMap::new();
        for k in 0..spheres.len() {
            let r = uf.find(k);
            let c = *root_class.entry(r).or_insert_with(|| {
                reps.push(spheres[k]);
                reps.len() - 1
            });
            class_of[k] = c;
        }
        let order = reps.len();
        let mut mul = vec![vec![usize::MAX; order]; order];
        let index = self.filler_index(n + 1, 1);
        for (ka, &xa) in spheres.iter().enumerate() {
            for (kb, &xb) in spheres.iter().enumerate() {
                let mut facets = vec![xb, xa];
                facets.extend(std::iter::repeat(b).take(n - 1));
                let fillers = index.get(&facets).ok_or(SimpError::NotKan { m: n + 1, j: 1, facets: facets.clone() })?;
                for &y in fillers {
                    let c = class_of[pos[&self.face(n + 1, y, 1)]];
                    let slot = &mut mul[class_of[ka]][class_of[kb]];
                    if *slot != usize::MAX && *slot != c {
                        return Err(SimpError::IllDefined);
                    }
                    *slot = c;
                }
            }
        }
        let identity = class_of[pos[&b]];
        Ok(FiniteGroup { mul, identity, representatives: reps })
    }

    /// Quotient by per-dimension keys; fails if faces or degeneracies are not
    /// constant on classes.
    fn quotient<K: Clone + Ord>(&self, name: String, key: impl Fn(usize, usize) -> K) -> Result<Self, SimpError> {
        let top = self.top();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for m in 0..=top {
            let mut ids: BTreeMap<K, usize> = BTreeMap::new();
            let mut cls = Vec::with_capacity(self.count(m));
            let mut r = Vec::new();
            for x in 0..self.count(m) {
                let n = ids.len();
                let c = *ids.entry(key(m, x)).or_insert_with(|| {
                    r.push(x);
                    n
                });
                cls.push(c);
            }
            classes.push(cls);
            reps.push(r);
        }
        let mut faces = vec![Vec::new(); top + 1];
        let mut degens = vec![Vec::new(); top + 1];
        for m in 0..=top {
            for &x in &reps[m] {
                if m > 0 {
                    faces[m].push((0..=m).map(|i| classes[m - 1][self.face(m, x, i)]).collect::<Vec<_>>());
                }
                if m < top {
                    degens[m].push((0..=m).map(|i| classes[m + 1][self.degen(m, x, i)]).collect::<Vec<_>>());
                }
            }
            for x in 0..self.count(m) {
                let c = classes[m][x];
                if m > 0 && (0..=m).any(|i| classes[m - 1][self.face(m, x, i)] != faces[m][c][i]) {
                    return Err(SimpError::Table(format!("faces not constant on a class in dimension {m}")));
                }
                if m < top && (0..=m).any(|i| classes[m + 1][self.degen(m, x, i)] != degens[m][c][i]) {
                    return Err(SimpError::Table(format!("degeneracies not constant on a class in dimension {m}")));
                }
            }
        }
        let labels = reps
            .iter()
            .enumerate()
            .map(|(m, r)| r.iter().map(|&x| format!("[{}]", self.labels[m][x])).collect())
            .collect();
        Self::new(name, labels, faces, degens)
    }

    /// Moore truncation `τ<n`: simplices identified when their restrictions to
    /// every `(n−1)`-face agree.
    pub fn truncate_below(&self, n: usize) -> Result<Self, SimpError> {
        self.require_kan(self.top())?;
        let name = format!("τ<{n} {}", self.name);
        if n == 0 {
            return self.quotient(name, |_, _| Vec::<usize>::new());
        }
        self.quotient(name, |m, x| {
            if m < n {
                vec![x]
            } else {
                subsets(m, n).iter().map(|s| self.restrict(m, x, s)).collect()
            }
        })
    }

    /// Duskin truncation `τ≤n`: `n`-simplices up to homotopy relative to their
    /// boundary; higher simplices are identified when all their `n`-faces are.
    pub fn truncate_at_most(&self, n: usize) -> Result<Self, SimpError> {
        self.require_kan(self.top())?;
        let name = format!("τ≤{n} {}", self.name);
        if n == 0 {
            // Components of the vertices.
            let mut uf = UnionFind::new(self.count(0));
            if self.top() >= 1 {
                for e in 0..self.count(1) {
                    uf.union(self.face(1, e, 0), self.face(1, e, 1));
                }
            }
            let comp: Vec<usize> = (0..self.count(0)).map(|v| uf.find(v)).collect();
            return self.quotient(name, |m, x| comp[self.restrict(m, x, &[0])]);
        }
        if n + 1 > self.top() {
            return Err(SimpError::Truncated { needed: n + 1, available: self.top() });
        }
        let mut uf = UnionFind::new(self.count(n));
        for y in 0..self.count(n + 1) {
            let x = self.face(n + 1, y, n);
            let rel = (0..n).all(|i| self.face(n + 1, y, i) == self.degen(n - 1, self.face(n, x, i), n - 1));
            if rel {
                uf.union(x, self.face(n + 1, y, n + 1));
            }
        }
        let class: Vec<usize> = (0..self.count(n)).map(|x| uf.find(x)).collect();
        self.quotient(name, |m, x| {
            if m < n {
                vec![x]
            } else {
                subsets(m, n + 1).iter().map(|s| class[self.restrict(m, x, s)]).collect()
            }
        })
    }
}
