//! Exact `m(Γ0(n))` by backtracking over Farey triangles.
//!
//! The triangle on the Farey pair `(a'/a, b'/b)`, `a'/a < b'/b`, is the
//! image of `(∞, 0, 1)` under `[[b', a'], [b, a]]`, so its Γ0(n)-orbit is
//! determined by `(b : a) ∈ P¹(ℤ/n)` up to the rotation of the base triangle,
//! `(c : d) ↦ (−d : c + d)`. A normalized maximal polygon is a subtree of
//! the Stern–Brocot tree of triangles, rooted at `(∞, 0, 1)`, holding exactly
//! one triangle from every orbit not fixed by the rotation. Its largest cusp
//! denominator is the largest apex denominator of its triangles.

use std::collections::{HashMap, HashSet};

use crate::arith::{gcd, isqrt};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

struct Node {
    parent: usize,
    orbit: usize,
    dens: (u64, u64),
}

/// Rotation orbits of `P¹(ℤ/n)`, i.e. Γ0(n)-orbits of Farey triangles.
pub struct TriangleOrbits {
    n: u64,
    units: Vec<u64>,
    ids: HashMap<(u64, u64), usize>,
    fixed: Vec<bool>,
}

impl TriangleOrbits {
    pub fn new(n: u64) -> Self {
        let units = (1..n.max(2)).filter(|&l| gcd(l, n) == 1).collect();
        TriangleOrbits {
            n,
            units,
            ids: HashMap::new(),
            fixed: Vec::new(),
        }
    }

    fn canon(&self, c: u64, d: u64) -> (u64, u64) {
        let n = self.n;
        let (c, d) = (c % n, d % n);
        self.units
            .iter()
            .map(|&l| ((l as u128 * c as u128 % n as u128) as u64, (l as u128 * d as u128 % n as u128) as u64))
            .min()
            .unwrap_or((0, 0))
    }

    fn rotate(&self, (c, d): (u64, u64)) -> (u64, u64) {
        let n = self.n;
        self.canon((n - d % n) % n, (c + d) % n)
    }

    /// Orbit index of the triangle whose coset has bottom row `(c, d)`.
    pub fn orbit(&mut self, c: u64, d: u64) -> usize {
        let p0 = self.canon(c, d);
        if let Some(&id) = self.ids.get(&p0) {
            return id;
        }
        let p1 = self.rotate(p0);
        let p2 = self.rotate(p1);
        let id = self.fixed.len();
        self.fixed.push(p1 == p0);
        for p in [p0, p1, p2] {
            self.ids.insert(p, id);
        }
        id
    }

    /// Orbit of the triangle on the Farey pair with denominators `(a, b)`.
    pub fn orbit_of_pair(&mut self, (a, b): (u64, u64)) -> usize {
        self.orbit(b, a)
    }

    pub fn root_orbit(&mut self) -> usize {
        self.orbit(0, 1)
    }

    pub fn is_fixed(&self, orbit: usize) -> bool {
        self.fixed[orbit]
    }
}

/// All triangles with apex denominator at most `bound`.
struct Tree {
    nodes: Vec<Node>,
    orbits: TriangleOrbits,
}

impl Tree {
    fn build(n: u64, bound: u64) -> Tree {
        let mut orbits = TriangleOrbits::new(n);
        let root = orbits.root_orbit();
        let mut nodes = vec![Node {
            parent: NONE,
            orbit: root,
            dens: (0, 1),
        }];
        // children of the root: the triangle on (0/1, 1/1)
        let mut stack = vec![(0usize, (1u64, 1u64))];
        while let Some((parent, (a, b))) = stack.pop() {
            if a + b > bound {
                continue;
            }
            let id = nodes.len();
            let orbit = orbits.orbit_of_pair((a, b));
            nodes.push(Node {
                parent,
                orbit,
                dens: (a, b),
            });
            stack.push((id, (a, a + b)));
            stack.push((id, (a + b, b)));
        }
        Tree { nodes, orbits }
    }
}

struct Search<'t> {
    tree: &'t Tree,
    by_orbit: Vec<Vec<usize>>,
    chosen: Vec<bool>,
    used: Vec<bool>,
    open: Vec<usize>,
    failed: HashSet<Vec<u64>>,
}

impl Search<'_> {
    fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.chosen.len().div_ceil(64)];
        for (i, _) in self.chosen.iter().enumerate().filter(|(_, &c)| c) {
            words[i / 64] |= 1 << (i % 64);
        }
        words
    }

    /// Nodes that must be added to reach `x`, or `None` if that clashes.
    fn path_to(&self, x: usize) -> Option<Vec<usize>> {
        let mut path = Vec::new();
        let mut cur = x;
        while !self.chosen[cur] {
            let o = self.tree.nodes[cur].orbit;
            if self.used[o] || self.tree.orbits.is_fixed(o) || path.iter().any(|&p: &usize| self.tree.nodes[p].orbit == o) {
                return None;
            }
            path.push(cur);
            cur = self.tree.nodes[cur].parent;
        }
        Some(path)
    }

    fn set(&mut self, path: &[usize], on: bool) {
        for &p in path {
            self.chosen[p] = on;
            self.used[self.tree.nodes[p].orbit] = on;
        }
    }

    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let key = self.key();
        if self.failed.contains(&key) {
            return false;
        }
        // branch on the open orbit with the fewest ways to be reached
        let mut best: Option<Vec<Vec<usize>>> = None;
        for &o in &self.open {
            if self.used[o] {
                continue;
            }
            let cands: Vec<Vec<usize>> = self.by_orbit[o].iter().filter_map(|&x| self.path_to(x)).collect();
            if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                let done = cands.len() <= 1;
                best = Some(cands);
                if done {
                    break;
                }
            }
        }
        let mut cands = best.unwrap_or_default();
        cands.sort_by_key(|p| p.len());
        for path in cands {
            if path.len() > remaining {
                continue;
            }
            self.set(&path, true);
            if self.solve(remaining - path.len()) {
                return true;
            }
            self.set(&path, false);
        }
        self.failed.insert(key);
        false
    }
}

/// Whether some normalized maximal Γ0(n)-polygon has all cusp denominators
/// at most `bound`; returns its triangles' Farey-pair denominators.
pub(crate) fn maximal_within(n: u64, bound: u64) -> Option<Vec<(u64, u64)>> {
    let tree = Tree::build(n, bound);
    let orbit_count = tree.orbits.fixed.len();
    let mut by_orbit = vec![Vec::new(); orbit_count];
    for (i, node) in tree.nodes.iter().enumerate().skip(1) {
        by_orbit[node.orbit].push(i);
    }
    let root = tree.nodes[0].orbit;
    let free: Vec<usize> = (0..orbit_count).filter(|&o| !tree.orbits.is_fixed(o)).collect();
    let u = super::group_invariants(n).ok()?.u as usize;
    // every free orbit must show up below the bound
    if free.len() < u {
        return None;
    }
    let mut s = Search {
        tree: &tree,
        by_orbit,
        chosen: vec![false; tree.nodes.len()],
        used: vec![false; orbit_count],
        open: free.into_iter().filter(|&o| o != root).collect(),
        failed: HashSet::new(),
    };
    s.chosen[0] = true;
    s.used[root] = true;
    if !s.solve(u - 1) {
        return None;
    }
    Some(
        (1..tree.nodes.len())
            .filter(|&i| s.chosen[i])
            .map(|i| tree.nodes[i].dens)
            .collect(),
    )
}

/// Least `B ≤ max_bound` such that a normalized maximal Γ0(n)-polygon has
/// all cusp denominators at most `B`, deepening from `⌊√n⌋`.
pub fn m_exact_search(n: u64, max_bound: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::pre("level must be at least 2"));
    }
    let lower = isqrt(n);
    if max_bound < lower {
        return Err(Error::pre(format!("max_bound {max_bound} is below ⌊√{n}⌋ = {lower}")));
    }
    (lower..=max_bound)
        .find(|&b| maximal_within(n, b).is_some())
        .ok_or(Error::SearchExhausted(max_bound))
}
