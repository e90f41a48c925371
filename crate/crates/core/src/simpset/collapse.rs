use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::SimpError;

/// One horn fill: the simplex (vertex set) added together with its face
/// opposite `vertex`, glued along `Λ[k, j]` where `j` is the position of `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub simplex: Vec<usize>,
    pub vertex: usize,
}

impl CollapseStep {
    /// `(k, j)` of the horn being filled.
    pub fn horn(&self) -> (usize, usize) {
        let j = self.simplex.iter().position(|&v| v == self.vertex).expect("vertex of the simplex");
        (self.simplex.len() - 1, j)
    }
}

/// A filtration from a single vertex to the whole subcomplex by horn fills.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapse {
    pub start: usize,
    pub steps: Vec<CollapseStep>,
}

impl Collapse {
    /// Replays the fills: each must glue along faces already present, add two
    /// new simplices, and the result must be exactly `simplices`.
    pub fn verify(&self, simplices: &[Vec<usize>]) -> bool {
        let target: BTreeSet<Vec<usize>> = simplices.iter().map(|s| sorted(s)).collect();
        let mut have = BTreeSet::from([vec![self.start]]);
        for step in &self.steps {
            let sigma = sorted(&step.simplex);
            if sigma.len() < 2 || !sigma.contains(&step.vertex) {
                return false;
            }
            let without = |w: usize| sigma.iter().copied().filter(|&u| u != w).collect::<Vec<_>>();
            let glued = sigma.iter().filter(|&&w| w != step.vertex).all(|&w| have.contains(&without(w)));
            if !glued || !have.insert(without(step.vertex)) || !have.insert(sigma) {
                return false;
            }
        }
        have == target
    }
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

fn mask_of(s: &[usize]) -> u32 {
    s.iter().fold(0, |m, &v| m | (1 << v))
}

fn vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Searches for a collapse of the subcomplex of `Δ[n]` with the given
/// nondegenerate simplices (vertex sets, closed under faces). Exhaustive: `None`
/// means no sequence of horn fills from any vertex reaches the whole subcomplex.
pub fn find_collapse(n: usize, simplices: &[Vec<usize>]) -> Result<Option<Collapse>, SimpError> {
    if n >= 32 {
        return Err(SimpError::Table("at most 32 vertices".into()));
    }
    let mut masks: Vec<u32> = simplices.iter().map(|s| mask_of(s)).collect();
    masks.sort_unstable();
    masks.dedup();
    if masks.len() > 64 {
        return Err(SimpError::Table("at most 64 nondegenerate simplices".into()));
    }
    let pos = |m: u32| masks.iter().position(|&x| x == m);
    for &m in &masks {
        if m == 0 || m >> (n + 1) != 0 {
            return Err(SimpError::Table(format!("bad vertex set {:?}", vertices(m))));
        }
        if m.count_ones() > 1 {
            for v in vertices(m) {
                if pos(m & !(1 << v)).is_none() {
                    return Err(SimpError::Table(format!("{:?} lacks a face", vertices(m))));
                }
            }
        }
    }
    let full: u64 = if masks.len() == 64 { u64::MAX } else { (1u64 << masks.len()) - 1 };
    // Each possible move: (simplex index, opposite face index, required faces mask, vertex).
    let mut moves: Vec<(usize, usize, u64, usize)> = Vec::new();
    for (a, &m) in masks.iter().enumerate() {
        if m.count_ones() < 2 {
            continue;
        }
        for v in vertices(m) {
            let opp = pos(m & !(1 << v)).expect("closed under faces");
            let mut need = 0u64;
            for w in vertices(m) {
                if w != v {
                    need |= 1 << pos(m & !(1 << w)).expect("closed under faces");
                }
            }
            moves.push((a, opp, need, v));
        }
    }
    for (start, &m) in masks.iter().enumerate() {
        if m.count_ones() != 1 {
            continue;
        }
        let mut dead = HashSet::new();
        let mut steps = Vec::new();
        if search(1 << start, full, &moves, &mut dead, &mut steps) {
            return Ok(Some(Collapse {
                start: vertices(m)[0],
                steps: steps
                    .into_iter()
                    .map(|(a, v)| CollapseStep { simplex: vertices(masks[a]), vertex: v })
                    .collect(),
            }));
        }
    }
    Ok(None)
}

fn search(
    state: u64,
    full: u64,
    moves: &[(usize, usize, u64, usize)],
    dead: &mut HashSet<u64>,
    steps: &mut Vec<(usize, usize)>,
) -> bool {
    if state == full {
        return true;
    }
    if dead.contains(&state) {
        return false;
    }
    for &(a, opp, need, v) in moves {
        if state & (1 << a) == 0 && state & (1 << opp) == 0 && state & need == need {
            steps.push((a, v));
            if search(state | (1 << a) | (1 << opp), full, moves, dead, steps) {
                return true;
            }
            steps.pop();
        }
    }
    dead.insert(state);
    false
}
