//! Coherent 2-groups (weak monoidal groupoids with invertible objects, strict
//! unit, normalized associator), their nerves, and the inverse construction
//! from a reduced Kan set with unique fillers above dimension 2.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FinSimplicialSet, SimpError};

/// Objects are `0..n` with `0` the unit. Arrows are indexed globally;
/// `compose[f][g]` is `g ∘ f` (first `f`, then `g`) when the target of `f` is
/// the source of `g`. The associator `assoc[g][h][k]` is an arrow
/// `g(hk) → (gh)k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherentTwoGroup {
    pub name: String,
    pub mul: Vec<Vec<usize>>,
    pub arrows: Vec<(usize, usize)>,
    pub identity: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub tensor: Vec<Vec<usize>>,
    pub assoc: Vec<Vec<Vec<usize>>>,
}

fn fail(msg: String) -> SimpError {
    SimpError::TwoGroup(msg)
}

impl CoherentTwoGroup {
    /// Skeletal 2-group with object group given by `mul` (unit 0), automorphism
    /// group `ℤ/n` of every object with trivial action, and associator the
    /// normalized 3-cochain `omega` (values mod `n`). Validation decides whether
    /// `omega` is a cocycle.
    pub fn skeletal(name: &str, mul: Vec<Vec<usize>>, n: usize, omega: impl Fn(usize, usize, usize) -> usize) -> Result<Self, SimpError> {
        let n0 = mul.len();
        let arrow = |g: usize, a: usize| g * n + a % n;
        let arrows = (0..n0).flat_map(|g| (0..n).map(move |_| (g, g))).collect();
        let identity = (0..n0).map(|g| arrow(g, 0)).collect();
        let total = n0 * n;
        let compose = (0..total)
            .map(|f| (0..total).map(|g| (f / n == g / n).then(|| arrow(f / n, f % n + g % n))).collect())
            .collect();
        let tensor = (0..total)
            .map(|f| (0..total).map(|g| arrow(mul[f / n][g / n], f % n + g % n)).collect())
            .collect();
        let assoc = (0..n0)
            .map(|g| {
                (0..n0)
                    .map(|h| (0..n0).map(|k| arrow(mul[g][mul[h][k]], omega(g, h, k))).collect())
                    .collect()
            })
            .collect();
        let t = CoherentTwoGroup { name: name.into(), mul, arrows, identity, compose, tensor, assoc };
        t.validate()?;
        Ok(t)
    }

    /// The strict 2-group of the crossed module `ℤ/n → 1`: one object whose
    /// automorphisms form `ℤ/n`.
    pub fn crossed_module_cyclic(n: usize) -> Self {
        Self::skeletal(&format!("Z/{n}→1"), vec![vec![0]], n, |_, _, _| 0).expect("crossed module")
    }

    pub fn trivial() -> Self {
        Self::skeletal("trivial", vec![vec![0]], 1, |_, _, _| 0).expect("trivial 2-group")
    }

    /// Objects `ℤ/2`, automorphisms `ℤ/2`, associator the nontrivial cocycle
    /// supported on `(1,1,1)`.
    pub fn skeletal_z2_twisted() -> Self {
        Self::skeletal("Z/2 twisted", vec![vec![0, 1], vec![1, 0]], 2, |g, h, k| usize::from(g == 1 && h == 1 && k == 1))
            .expect("nontrivial cocycle on Z/2")
    }

    pub fn objects(&self) -> usize {
        self.mul.len()
    }

    fn comp(&self, f: usize, g: usize) -> Result<usize, SimpError> {
        self.compose[f][g].ok_or_else(|| fail(format!("arrows {f} and {g} are not composable")))
    }

    fn inverse_arrow(&self, f: usize) -> Option<usize> {
        let (s, t) = self.arrows[f];
        (0..self.arrows.len()).find(|&g| self.compose[f][g] == Some(self.identity[s]) && self.compose[g][f] == Some(self.identity[t]))
    }

    /// Checks tables, groupoid laws, functoriality of the tensor, unit,
    /// naturality of the associator and the pentagon.
    pub fn validate(&self) -> Result<(), SimpError> {
        let n0 = self.objects();
        let na = self.arrows.len();
        if n0 == 0 || self.mul.iter().any(|r| r.len() != n0 || r.iter().any(|&x| x >= n0)) {
            return Err(fail("object table must be square".into()));
        }
        if self.identity.len() != n0 || self.compose.len() != na || self.tensor.len() != na || self.assoc.len() != n0 {
            return Err(fail("table sizes disagree".into()));
        }
        if self.compose.iter().any(|r| r.len() != na || r.iter().flatten().any(|&x| x >= na))
            || self.tensor.iter().any(|r| r.len() != na || r.iter().any(|&x| x >= na))
            || self.arrows.iter().any(|&(s, t)| s >= n0 || t >= n0)
            || self.identity.iter().any(|&x| x >= na)
            || self.assoc.iter().any(|p| p.len() != n0 || p.iter().any(|r| r.len() != n0 || r.iter().any(|&x| x >= na)))
        {
            return Err(fail("table entries out of range".into()));
        }
        for g in 0..n0 {
            if self.mul[0][g] != g || self.mul[g][0] != g {
                return Err(fail(format!("object 0 is not a strict unit for {g}")));
            }
            if self.arrows[self.identity[g]] != (g, g) {
                return Err(fail(format!("identity of {g} has wrong ends")));
            }
            if !(0..n0).any(|h| (0..na).any(|f| self.arrows[f] == (self.mul[g][h], 0))) {
                return Err(fail(format!("object {g} has no inverse")));
            }
        }
        for f in 0..na {
            let (s, t) = self.arrows[f];
            if self.compose[self.identity[s]][f] != Some(f) || self.compose[f][self.identity[t]] != Some(f) {
                return Err(fail(format!("identities are not neutral for arrow {f}")));
            }
            if self.inverse_arrow(f).is_none() {
                return Err(fail(format!("arrow {f} is not invertible")));
            }
            for g in 0..na {
                let composable = t == self.arrows[g].0;
                match self.compose[f][g] {
                    Some(c) if composable => {
                        if self.arrows[c] != (s, self.arrows[g].1) {
                            return Err(fail(format!("composite of {f} and {g} has wrong ends")));
                        }
                        for h in (0..na).filter(|&h| self.arrows[h].0 == self.arrows[g].1) {
                            if self.comp(c, h)? != self.comp(f, self.comp(g, h)?)? {
                                return Err(fail(format!("composition not associative at ({f},{g},{h})")));
                            }
                        }
                    }
                    None if !composable => {}
                    _ => return Err(fail(format!("composition table wrong at ({f},{g})"))),
                }
                let (s2, t2) = self.arrows[g];
                let x = self.tensor[f][g];
                if self.arrows[x] != (self.mul[s][s2], self.mul[t][t2]) {
                    return Err(fail(format!("tensor of {f} and {g} has wrong ends")));
                }
            }
            if self.tensor[self.identity[0]][f] != f || self.tensor[f][self.identity[0]] != f {
                return Err(fail(format!("unit does not act trivially on arrow {f}")));
            }
        }
        for g in 0..n0 {
            for h in 0..n0 {
                if self.tensor[self.identity[g]][self.identity[h]] != self.identity[self.mul[g][h]] {
                    return Err(fail(format!("tensor of identities at ({g},{h})")));
                }
            }
        }
        // Interchange law.
        for f in 0..na {
            for f2 in (0..na).filter(|&x| self.compose[f][x].is_some()) {
                for g in 0..na {
                    for g2 in (0..na).filter(|&x| self.compose[g][x].is_some()) {
                        let lhs = self.tensor[self.comp(f, f2)?][self.comp(g, g2)?];
                        let rhs = self.comp(self.tensor[f][g], self.tensor[f2][g2])?;
                        if lhs != rhs {
                            return Err(fail(format!("interchange fails at ({f},{f2},{g},{g2})")));
                        }
                    }
                }
            }
        }
        let m = &self.mul;
        for g in 0..n0 {
            for h in 0..n0 {
                for k in 0..n0 {
                    let a = self.assoc[g][h][k];
                    if self.arrows[a] != (m[g][m[h][k]], m[m[g][h]][k]) {
                        return Err(fail(format!("associator at ({g},{h},{k}) has wrong ends")));
                    }
                    if (g == 0 || h == 0 || k == 0) && a != self.identity[m[g][m[h][k]]] {
                        return Err(fail(format!("associator at ({g},{h},{k}) is not normalized")));
                    }
                }
            }
        }
        for f in 0..na {
            for u in 0..na {
                for v in 0..na {
                    let ((g, g2), (h, h2), (k, k2)) = (self.arrows[f], self.arrows[u], self.arrows[v]);
                    let lhs = self.comp(self.tensor[f][self.tensor[u][v]], self.assoc[g2][h2][k2])?;
                    let rhs = self.comp(self.assoc[g][h][k], self.tensor[self.tensor[f][u]][v])?;
                    if lhs != rhs {
                        return Err(fail(format!("associator not natural at arrows ({f},{u},{v})")));
                    }
                }
            }
        }
        for a in 0..n0 {
            for b in 0..n0 {
                for c in 0..n0 {
                    for d in 0..n0 {
                        let p1 = self.comp(self.assoc[a][b][m[c][d]], self.assoc[m[a][b]][c][d])?;
                        let p2 = self.comp(
                            self.comp(self.tensor[self.identity[a]][self.assoc[b][c][d]], self.assoc[a][m[b][c]][d])?,
                            self.tensor[self.assoc[a][b][c]][self.identity[d]],
                        )?;
                        if p1 != p2 {
                            return Err(fail(format!("pentagon fails at ({a},{b},{c},{d})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_skeletal(&self) -> bool {
        self.arrows.iter().all(|&(s, t)| s == t)
    }
}

/// Data of a nerve simplex on vertices `0..=m`: `g[(i,j)]` objects and
/// `h[(i,j,k)]` arrows `g_ij g_jk → g_ik`, flattened in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct NerveSimplex {
    g: Vec<usize>,
    h: Vec<usize>,
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    // pairs (a,b), a<b≤m in lex order
    (0..i).map(|a| m - a).sum::<usize>() + (j - i - 1)
}

fn triple_index(m: usize, i: usize, j: usize, k: usize) -> usize {
    let mut idx = 0;
    for a in 0..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                if (a, b, c) == (i, j, k) {
                    return idx;
                }
                idx += 1;
            }
        }
    }
    unreachable!("triple out of range")
}

fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect()
}

fn triples(m: usize) -> Vec<(usize, usize, usize)> {
    (0..=m)
        .flat_map(|a| (a + 1..=m).flat_map(move |b| (b + 1..=m).map(move |c| (a, b, c))))
        .collect()
}

impl NerveSimplex {
    fn gij(&self, m: usize, i: usize, j: usize) -> usize {
        self.g[pair_index(m, i, j)]
    }

    fn hijk(&self, m: usize, i: usize, j: usize, k: usize) -> usize {
        self.h[triple_index(m, i, j, k)]
    }

    fn face(&self, m: usize, v: usize) -> Self {
        let up = |a: usize| if a < v { a } else { a + 1 };
        NerveSimplex {
            g: pairs(m - 1).iter().map(|&(a, b)| self.gij(m, up(a), up(b))).collect(),
            h: triples(m - 1).iter().map(|&(a, b, c)| self.hijk(m, up(a), up(b), up(c))).collect(),
        }
    }

    fn degen(&self, t: &CoherentTwoGroup, m: usize, v: usize) -> Self {
        let down = |a: usize| if a <= v { a } else { a - 1 };
        let g = pairs(m + 1)
            .iter()
            .map(|&(a, b)| if down(a) == down(b) { 0 } else { self.gij(m, down(a), down(b)) })
            .collect();
        let h = triples(m + 1)
            .iter()
            .map(|&(a, b, c)| {
                let (x, y, z) = (down(a), down(b), down(c));
                if x == y {
                    t.identity[self.gij(m, y, z)]
                } else if y == z {
                    t.identity[self.gij(m, x, y)]
                } else {
                    self.hijk(m, x, y, z)
                }
            })
            .collect();
        NerveSimplex { g, h }
    }

    /// The coherence square on the 3-simplex `(i,j,k,l)`.
    fn square_commutes(&self, t: &CoherentTwoGroup, m: usize, q: [usize; 4]) -> bool {
        let [i, j, k, l] = q;
        let (gij, gjk, gkl) = (self.gij(m, i, j), self.gij(m, j, k), self.gij(m, k, l));
        let lhs = t.compose[t.tensor[t.identity[gij]][self.hijk(m, j, k, l)]][self.hijk(m, i, j, l)];
        let rhs = t.compose[t.assoc[gij][gjk][gkl]][t.tensor[self.hijk(m, i, j, k)][t.identity[gkl]]]
            .and_then(|x| t.compose[x][self.hijk(m, i, k, l)]);
        lhs.is_some() && lhs == rhs
    }
}

/// The nerve `NG` up to dimension `top`: `m`-simplices are objects `g_ij` and
/// arrows `h_ijk: g_ij g_jk → g_ik` with every coherence square commuting.
pub fn nerve_2group(t: &CoherentTwoGroup, top: usize) -> Result<FinSimplicialSet, SimpError> {
    t.validate()?;
    let mut levels: Vec<Vec<NerveSimplex>> = vec![vec![NerveSimplex { g: vec![], h: vec![] }]];
    if top >= 1 {
        levels.push((0..t.objects()).map(|g| NerveSimplex { g: vec![g], h: vec![] }).collect());
    }
    if top >= 2 {
        let mut two = Vec::new();
        for a in 0..t.objects() {
            for b in 0..t.objects() {
                for (f, &(s, tgt)) in t.arrows.iter().enumerate() {
                    if s == t.mul[a][b] {
                        two.push(NerveSimplex { g: vec![a, tgt, b], h: vec![f] });
                    }
                }
            }
        }
        levels.push(two);
    }
    for m in 3..=top {
        let prev = &levels[m - 1];
        let by_d0: HashMap<NerveSimplex, Vec<usize>> = prev.iter().enumerate().fold(HashMap::new(), |mut acc, (i, s)| {
            acc.entry(s.face(m - 1, 0)).or_default().push(i);
            acc
        });
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        boundary_tuples(prev, &by_d0, m, &mut cur, &mut |faces| {
            // Assemble from faces: pair/triple data from a face missing some other vertex.
            let g = pairs(m)
                .iter()
                .map(|&(a, b)| {
                    let v = (0..=m).find(|&v| v != a && v != b).expect("m ≥ 3");
                    let dn = |x: usize| if x < v { x } else { x - 1 };
                    prev[faces[v]].gij(m - 1, dn(a), dn(b))
                })
                .collect();
            let h = triples(m)
                .iter()
                .map(|&(a, b, c)| {
                    let v = (0..=m).find(|&v| v != a && v != b && v != c).expect("m ≥ 3");
                    let dn = |x: usize| if x < v { x } else { x - 1 };
                    prev[faces[v]].hijk(m - 1, dn(a), dn(b), dn(c))
                })
                .collect();
            let s = NerveSimplex { g, h };
            if m > 3 || s.square_commutes(t, 3, [0, 1, 2, 3]) {
                out.push(s);
            }
        });
        levels.push(out);
    }
    let label = |s: &NerveSimplex| {
        let g: Vec<String> = s.g.iter().map(usize::to_string).collect();
        let h: Vec<String> = s.h.iter().map(usize::to_string).collect();
        format!("g[{}] h[{}]", g.join(","), h.join(","))
    };
    let mut x = FinSimplicialSet::from_keys(
        format!("N({})", t.name),
        levels,
        label,
        |m, s, i| s.face(m, i),
        |m, s, i| s.degen(t, m, i),
    )?;
    x.coskeletal = top >= 3;
    Ok(x)
}

/// Enumerates compatible tuples `(y_0, …, y_m)` of `(m−1)`-simplices.
fn boundary_tuples(
    prev: &[NerveSimplex],
    by_d0: &HashMap<NerveSimplex, Vec<usize>>,
    m: usize,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let k = cur.len();
    if k == m + 1 {
        emit(cur);
        return;
    }
    let candidates: Vec<usize> = if k == 0 {
        (0..prev.len()).collect()
    } else {
        // d_0 y_k = d_{k−1} y_0
        by_d0.get(&prev[cur[0]].face(m - 1, k - 1)).cloned().unwrap_or_default()
    };
    for y in candidates {
        let ok = (1..k).all(|i| prev[y].face(m - 1, i) == prev[cur[i]].face(m - 1, k - 1));
        if ok {
            cur.push(y);
            boundary_tuples(prev, by_d0, m, cur, emit);
            cur.pop();
        }
    }
}

struct Fill<'a> {
    x: &'a FinSimplicialSet,
    index: HashMap<(usize, usize), HashMap<Vec<usize>, Vec<usize>>>,
}

impl Fill<'_> {
    /// Smallest filler of the horn `Λ[m, j]` with the given facets.
    fn fill(&mut self, m: usize, j: usize, facets: Vec<usize>) -> Result<usize, SimpError> {
        let x = self.x;
        let idx = self.index.entry((m, j)).or_insert_with(|| x.filler_index(m, j));
        idx.get(&facets)
            .and_then(|v| v.iter().min().copied())
            .ok_or(SimpError::NotKan { m, j, facets })
    }
}

/// The coherent 2-group of a reduced Kan set with unique fillers above 2:
/// objects are edges, arrows are 2-simplices with `d₂ = *` (from `d₀` to `d₁`),
/// and products come from fixed fillers (degenerate when a factor is the unit,
/// otherwise the smallest index).
pub fn two_group_from_kan(x: &FinSimplicialSet) -> Result<CoherentTwoGroup, SimpError> {
    if !x.is_reduced() {
        return Err(SimpError::NotReduced(x.count(0)));
    }
    if x.top() < 3 {
        return Err(SimpError::Truncated { needed: 3, available: x.top() });
    }
    x.require_kan(3)?;
    x.unique_fillers_above(2, x.top())??;
    let unit_edge = x.base(1);
    let star2 = x.base(2);
    let mut objects: Vec<usize> = vec![unit_edge];
    objects.extend((0..x.count(1)).filter(|&e| e != unit_edge));
    let obj: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let arrow_simplices: Vec<usize> = (0..x.count(2)).filter(|&y| x.face(2, y, 2) == unit_edge).collect();
    let arr: HashMap<usize, usize> = arrow_simplices.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let arrows: Vec<(usize, usize)> = arrow_simplices.iter().map(|&y| (obj[&x.face(2, y, 0)], obj[&x.face(2, y, 1)])).collect();
    let na = arrows.len();
    let n0 = objects.len();
    let mut f = Fill { x, index: HashMap::new() };

    let identity: Vec<usize> = objects.iter().map(|&e| arr[&x.degen(1, e, 0)]).collect();
    let mut compose = vec![vec![None; na]; na];
    for a in 0..na {
        for b in 0..na {
            if arrows[a].1 == arrows[b].0 {
                let y = f.fill(3, 1, vec![arrow_simplices[a], arrow_simplices[b], star2])?;
                compose[a][b] = Some(arr[&x.face(3, y, 1)]);
            }
        }
    }
    // Chosen product simplices m(a, b) with d₂ = a, d₀ = b.
    let mut chosen = vec![vec![0; n0]; n0];
    for a in 0..n0 {
        for b in 0..n0 {
            chosen[a][b] = if a == 0 {
                x.degen(1, objects[b], 0)
            } else if b == 0 {
                x.degen(1, objects[a], 1)
            } else {
                f.fill(2, 1, vec![objects[b], objects[a]])?
            };
        }
    }
    let mul: Vec<Vec<usize>> = (0..n0).map(|a| (0..n0).map(|b| obj[&x.face(2, chosen[a][b], 1)]).collect()).collect();
    // Arrow μ₀(a, b) → d₁σ for a 2-simplex σ with d₂σ = a, d₀σ = b.
    let kappa = |f: &mut Fill, sigma: usize| -> Result<usize, SimpError> {
        let (a, b) = (obj[&x.face(2, sigma, 2)], obj[&x.face(2, sigma, 0)]);
        let y = f.fill(3, 2, vec![chosen[a][b], sigma, x.degen(1, objects[a], 0)])?;
        Ok(arr[&x.face(3, y, 2)])
    };
    let comp = |p: usize, q: usize| compose[p][q].ok_or_else(|| fail("whiskers do not compose".into()));
    let mut tensor = vec![vec![0; na]; na];
    for p in 0..na {
        for q in 0..na {
            let ((a, a2), (b, b2)) = (arrows[p], arrows[q]);
            let right = f.fill(3, 2, vec![chosen[a][b], chosen[a2][b], arrow_simplices[p]])?;
            let right = arr[&x.face(3, right, 2)];
            let sigma = f.fill(3, 1, vec![arrow_simplices[q], chosen[a2][b2], x.degen(1, objects[a2], 1)])?;
            let left = kappa(&mut f, x.face(3, sigma, 1))?;
            tensor[p][q] = comp(right, left)?;
        }
    }
    let mut assoc = vec![vec![vec![0; n0]; n0]; n0];
    for a in 0..n0 {
        for b in 0..n0 {
            for c in 0..n0 {
                let y = f.fill(3, 2, vec![chosen[b][c], chosen[mul[a][b]][c], chosen[a][b]])?;
                assoc[a][b][c] = kappa(&mut f, x.face(3, y, 2))?;
            }
        }
    }
    let t = CoherentTwoGroup { name: format!("Π({})", x.name), mul, arrows, identity, compose, tensor, assoc };
    t.validate()?;
    Ok(t)
}

/// Skeletal invariants: object group, automorphism group of the unit, action,
/// and the associator transported to `Aut(0)`.
struct Skeleton {
    mul: Vec<Vec<usize>>,
    aut_mul: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
    omega: Vec<Vec<Vec<usize>>>,
}

fn skeleton(t: &CoherentTwoGroup) -> Result<Skeleton, SimpError> {
    if !t.is_skeletal() {
        return Err(fail(format!("{} is not skeletal", t.name)));
    }
    let n0 = t.objects();
    let aut: Vec<usize> = (0..t.arrows.len()).filter(|&f| t.arrows[f] == (0, 0)).collect();
    let pos: HashMap<usize, usize> = aut.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let inv: Vec<usize> = (0..n0)
        .map(|g| (0..n0).find(|&h| t.mul[g][h] == 0).ok_or_else(|| fail(format!("object {g} has no inverse"))))
        .collect::<Result<_, _>>()?;
    let transport = |f: usize| -> usize {
        let g = t.arrows[f].0;
        pos[&t.tensor[f][t.identity[inv[g]]]]
    };
    let aut_mul = aut
        .iter()
        .map(|&a| aut.iter().map(|&b| pos[&t.compose[a][b].expect("automorphisms compose")]).collect())
        .collect();
    let action = (0..n0)
        .map(|g| aut.iter().map(|&a| transport(t.tensor[t.identity[g]][a])).collect())
        .collect();
    let omega = (0..n0)
        .map(|g| (0..n0).map(|h| (0..n0).map(|k| transport(t.assoc[g][h][k])).collect()).collect())
        .collect();
    Ok(Skeleton { mul: t.mul.clone(), aut_mul, action, omega })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn group_isos(a: &[Vec<usize>], b: &[Vec<usize>], identity: usize) -> Vec<Vec<usize>> {
    if a.len() != b.len() {
        return Vec::new();
    }
    permutations(a.len())
        .into_iter()
        .filter(|p| p[identity] == identity && (0..a.len()).all(|x| (0..a.len()).all(|y| p[a[x][y]] == b[p[x]][p[y]])))
        .collect()
}

const SEARCH_CAP: u128 = 1 << 22;

/// Equivalence of skeletal 2-groups: isomorphic object groups and automorphism
/// groups compatibly with the action, with associator classes related by a
/// normalized 2-cochain. Exhaustive, meant for groups of order at most about 6.
pub fn skeletal_equivalent(s: &CoherentTwoGroup, t: &CoherentTwoGroup) -> Result<bool, SimpError> {
    let (a, b) = (skeleton(s)?, skeleton(t)?);
    let n0 = a.mul.len();
    let n1 = a.aut_mul.len();
    if n0 != b.mul.len() || n1 != b.aut_mul.len() {
        return Ok(false);
    }
    let unit1 = (0..n1).find(|&x| (0..n1).all(|y| a.aut_mul[x][y] == y)).expect("identity arrow");
    let unit1b = (0..n1).find(|&x| (0..n1).all(|y| b.aut_mul[x][y] == y)).expect("identity arrow");
    if unit1 != 0 || unit1b != 0 {
        return Err(fail("the identity of the unit must be its first automorphism".into()));
    }
    let free = (n0 - 1) * (n0 - 1);
    if (n1 as u128).saturating_pow(free as u32) > SEARCH_CAP {
        return Err(fail("cochain search space too large".into()));
    }
    let inv1: Vec<usize> = (0..n1).map(|x| (0..n1).find(|&y| b.aut_mul[x][y] == 0).expect("inverse")).collect();
    for p0 in group_isos(&a.mul, &b.mul, 0) {
        for p1 in group_isos(&a.aut_mul, &b.aut_mul, 0) {
            let compatible = (0..n0).all(|g| (0..n1).all(|x| p1[a.action[g][x]] == b.action[p0[g]][p1[x]]));
            if !compatible {
                continue;
            }
            // Difference cocycle in t's terms, indexed by s's objects.
            let diff = |g: usize, h: usize, k: usize| b.aut_mul[b.omega[p0[g]][p0[h]][p0[k]]][inv1[p1[a.omega[g][h][k]]]];
            let mut beta = vec![vec![0usize; n0]; n0];
            for code in 0..(n1 as u128).pow(free as u32) {
                let mut c = code;
                for g in 1..n0 {
                    for h in 1..n0 {
                        beta[g][h] = (c % n1 as u128) as usize;
                        c /= n1 as u128;
                    }
                }
                let m = &a.mul;
                let ok = (0..n0).all(|g| {
                    (0..n0).all(|h| {
                        (0..n0).all(|k| {
                            let mut v = b.action[p0[g]][beta[h][k]];
                            v = b.aut_mul[v][inv1[beta[m[g][h]][k]]];
                            v = b.aut_mul[v][beta[g][m[h][k]]];
                            v = b.aut_mul[v][inv1[beta[g][h]]];
                            v == diff(g, h, k)
                        })
                    })
                });
                if ok {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
