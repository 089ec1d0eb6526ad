//! Normalized ideal polygons for Γ0(n) and their Farey-symbol labels.
//!
//! A polygon is the cusp list `[∞, 0, …, 1]` together with one label per
//! side; side `i` joins `cusps[i]` to `cusps[i+1]` and the last side closes
//! back to `∞`. A side `(a'/a, b'/b)` away from `∞` is classified by its
//! denominators alone:
//!
//! - even iff `n | a² + b²`,
//! - odd iff `n | a² + ab + b²`,
//! - paired with `(c'/c, d'/d)` iff `n | ac + bd`,
//! - free otherwise.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod};
use crate::error::{Error, Result};
use crate::frac::{farey_sequence, is_farey_pair, mediant, ExtFrac};
use crate::psl::{edge_transport, PslMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideLabel {
    Even,
    Odd,
    Free,
    /// Pair index, `k ≥ 2`; the two sides sharing an index are glued.
    Paired(u32),
    /// `(∞, 0)` and `(1, ∞)`, glued by the translation; printed as 1.
    Vertical,
}

impl SideLabel {
    /// Integer encoding: −2 even, −3 odd, −4 free, `k ≥ 1` paired.
    pub fn code(self) -> i64 {
        match self {
            SideLabel::Even => -2,
            SideLabel::Odd => -3,
            SideLabel::Free => -4,
            SideLabel::Paired(k) => k as i64,
            SideLabel::Vertical => 1,
        }
    }

    pub fn from_code(code: i64) -> Result<Self> {
        Ok(match code {
            -2 => SideLabel::Even,
            -3 => SideLabel::Odd,
            -4 => SideLabel::Free,
            1 => SideLabel::Vertical,
            k if k >= 2 && k <= u32::MAX as i64 => SideLabel::Paired(k as u32),
            _ => return Err(Error::Parse(format!("invalid side label {code}"))),
        })
    }
}

/// Outcome of [`classify_side`]: the partner is an index into the list of
/// sides that was searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideClass {
    Even,
    Odd,
    PairedWith(usize),
    Free,
}

fn residue_sq_sum(n: u64, a: u64, b: u64) -> (bool, bool) {
    let (a, b, n) = ((a % n) as u128, (b % n) as u128, n as u128);
    let sq = (a * a + b * b) % n;
    (sq == 0, (sq + a * b) % n == 0)
}

fn pairs_with(n: u64, (a, b): (u64, u64), (c, d): (u64, u64)) -> bool {
    let nn = n as u128;
    let (a, b, c, d) = ((a % n) as u128, (b % n) as u128, (c % n) as u128, (d % n) as u128);
    (a * c + b * d) % nn == 0
}

/// Classify the side with denominators `side` against the other sides of
/// the polygon. Entries of `all` equal to `side` are skipped (a normalized
/// polygon never repeats a denominator pair).
pub fn classify_side(n: u64, side: (u64, u64), all: &[(u64, u64)]) -> SideClass {
    let (even, odd) = residue_sq_sum(n, side.0, side.1);
    debug_assert!(!(even && odd) || n <= 1, "even and odd at once");
    if even {
        return SideClass::Even;
    }
    if odd {
        return SideClass::Odd;
    }
    all.iter()
        .position(|&other| other != side && pairs_with(n, side, other))
        .map_or(SideClass::Free, SideClass::PairedWith)
}

/// Index of sides by the residue class their partners must hit.
///
/// For `(c, d)` with `d` a unit mod `n` the key is `c·d⁻¹ mod n`; a side
/// `(a, b)` pairs with it iff `a` is a unit and `c·d⁻¹ ≡ −b·a⁻¹`. Sides
/// with non-unit `d` can only pair with sides whose `a` is a non-unit, and
/// those are matched by a linear scan.
pub(crate) struct PairFinder {
    n: u64,
    by_point: HashMap<(u64, u64), Vec<usize>>,
    dens: Vec<(u64, u64)>,
    active: Vec<bool>,
}

/// Canonical key of `(c : d) ∈ P¹(ℤ/n)` for coprime `c, d`: with
/// `g = gcd(d, n)`, the point is determined by `g` and `c · (d/g)⁻¹ mod n/g`.
fn point_key(n: u64, c: u64, d: u64) -> (u64, u64) {
    let g = gcd(d % n, n);
    let m = n / g;
    let inv = inv_mod((d / g) % m, m).expect("d/g is a unit mod n/g");
    (g, ((c % m) as u128 * inv as u128 % m as u128) as u64)
}

impl PairFinder {
    pub(crate) fn new(n: u64) -> Self {
        PairFinder {
            n,
            by_point: HashMap::new(),
            dens: Vec::new(),
            active: Vec::new(),
        }
    }

    pub(crate) fn insert(&mut self, id: usize, (c, d): (u64, u64)) {
        if self.dens.len() <= id {
            self.dens.resize(id + 1, (0, 0));
            self.active.resize(id + 1, false);
        }
        self.dens[id] = (c, d);
        self.active[id] = true;
        self.by_point.entry(point_key(self.n, c, d)).or_default().push(id);
    }

    pub(crate) fn remove(&mut self, id: usize) {
        if let Some(a) = self.active.get_mut(id) {
            *a = false;
        }
    }

    /// A side `(c, d)` pairs with `(a, b)` iff `(c : d) = (−b : a)`.
    pub(crate) fn find(&mut self, (a, b): (u64, u64), exclude: usize) -> Option<usize> {
        let n = self.n;
        let active = &self.active;
        let dens = &self.dens;
        let bucket = self.by_point.get_mut(&point_key(n, (n - b % n) % n, a))?;
        bucket.retain(|&id| active[id]);
        bucket.iter().copied().find(|&id| id != exclude && pairs_with(n, (a, b), dens[id]))
    }
}

/// Direction in which pair indices `2, 3, …` are handed out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairNumbering {
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolygon {
    n: u64,
    cusps: Vec<ExtFrac>,
    labels: Vec<SideLabel>,
}

fn check_cusps(cusps: &[ExtFrac]) -> Result<()> {
    let bad = |m: String| Err(Error::pre(m));
    if cusps.len() < 3 {
        return bad("a polygon needs at least the cusps ∞, 0, 1".into());
    }
    if cusps[0] != ExtFrac::INFINITY || cusps[1] != ExtFrac::ZERO || *cusps.last().unwrap() != ExtFrac::ONE {
        return bad("cusps must run ∞, 0, …, 1".into());
    }
    for w in cusps[1..].windows(2) {
        if !is_farey_pair(&w[0], &w[1]) || w[0].cmp_finite(&w[1]) != Some(Ordering::Less) {
            return bad(format!("({}, {}) is not an increasing Farey pair", w[0], w[1]));
        }
    }
    Ok(())
}

fn den_u64(x: &ExtFrac) -> Result<u64> {
    u64::try_from(x.den()).map_err(|_| Error::Overflow)
}

/// Turn partner links into `Paired(k)` labels, numbering pairs in the given
/// direction starting at 2.
fn number_pairs(classes: &[SideClass], dir: PairNumbering) -> Vec<SideLabel> {
    let len = classes.len();
    let mut labels = vec![SideLabel::Free; len];
    let mut next = 2u32;
    let order: Box<dyn Iterator<Item = usize>> = match dir {
        PairNumbering::LeftToRight => Box::new(0..len),
        PairNumbering::RightToLeft => Box::new((0..len).rev()),
    };
    for i in order {
        labels[i] = match classes[i] {
            SideClass::Even => SideLabel::Even,
            SideClass::Odd => SideLabel::Odd,
            SideClass::Free => SideLabel::Free,
            SideClass::PairedWith(j) => match labels[j] {
                SideLabel::Paired(k) => SideLabel::Paired(k),
                _ => {
                    next += 1;
                    SideLabel::Paired(next - 1)
                }
            },
        };
    }
    labels
}

impl LabeledPolygon {
    /// Label every side of the normalized polygon with the given cusps.
    pub fn classify(n: u64, cusps: Vec<ExtFrac>) -> Result<Self> {
        Self::classify_with(n, cusps, PairNumbering::LeftToRight)
    }

    pub fn classify_with(n: u64, cusps: Vec<ExtFrac>, dir: PairNumbering) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("level must be positive"));
        }
        check_cusps(&cusps)?;
        let inner: Vec<(u64, u64)> = cusps[1..]
            .windows(2)
            .map(|w| Ok((den_u64(&w[0])?, den_u64(&w[1])?)))
            .collect::<Result<_>>()?;
        let mut classes = vec![SideClass::Free; inner.len()];
        let mut finder = PairFinder::new(n);
        let mut candidates = Vec::new();
        for (i, &(a, b)) in inner.iter().enumerate() {
            let (even, odd) = residue_sq_sum(n, a, b);
            if even {
                classes[i] = SideClass::Even;
            } else if odd {
                classes[i] = SideClass::Odd;
            } else {
                finder.insert(i, (a, b));
                candidates.push(i);
            }
        }
        for i in candidates {
            if !matches!(classes[i], SideClass::Free) {
                continue;
            }
            finder.remove(i);
            if let Some(j) = finder.find(inner[i], i) {
                finder.remove(j);
                classes[i] = SideClass::PairedWith(j);
                classes[j] = SideClass::PairedWith(i);
            }
        }
        let mut labels = vec![SideLabel::Vertical];
        labels.extend(number_pairs(&classes, dir));
        labels.push(SideLabel::Vertical);
        Ok(LabeledPolygon { n, cusps, labels })
    }

    /// Convex hull of the extended Farey sequence of order `v`.
    pub fn farey_hull(n: u64, v: u64) -> Result<Self> {
        Self::classify(n, farey_sequence(v)?)
    }

    /// Polygon from cusps and labels taken verbatim; only the shape and the
    /// label multiset are checked.
    pub fn from_parts(n: u64, cusps: Vec<ExtFrac>, labels: Vec<SideLabel>) -> Result<Self> {
        check_cusps(&cusps)?;
        if labels.len() != cusps.len() {
            return Err(Error::pre("one label per side required"));
        }
        if labels[0] != SideLabel::Vertical || *labels.last().unwrap() != SideLabel::Vertical {
            return Err(Error::pre("the two sides at ∞ carry label 1"));
        }
        if labels[1..labels.len() - 1].contains(&SideLabel::Vertical) {
            return Err(Error::pre("label 1 is reserved for the sides at ∞"));
        }
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for l in &labels {
            if let SideLabel::Paired(k) = l {
                *counts.entry(*k).or_default() += 1;
            }
        }
        if let Some((k, _)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::pre(format!("pair index {k} must label exactly two sides")));
        }
        Ok(LabeledPolygon { n, cusps, labels })
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn cusps(&self) -> &[ExtFrac] {
        &self.cusps
    }

    pub fn labels(&self) -> &[SideLabel] {
        &self.labels
    }

    /// The σ-tuple, e.g. `(1, 2, 2, 3, 3, 1)`.
    pub fn sigma(&self) -> Vec<i64> {
        self.labels.iter().map(|l| l.code()).collect()
    }

    pub fn num_sides(&self) -> usize {
        self.cusps.len()
    }

    /// Number of ideal triangles, `#cusps − 2`.
    pub fn num_triangles(&self) -> usize {
        self.cusps.len() - 2
    }

    pub fn side(&self, i: usize) -> (ExtFrac, ExtFrac) {
        (self.cusps[i], self.cusps[(i + 1) % self.cusps.len()])
    }

    pub fn side_denominators(&self, i: usize) -> (u64, u64) {
        let (x, y) = self.side(i);
        (x.den() as u64, y.den() as u64)
    }

    pub fn denominator_sequence(&self) -> Vec<u64> {
        self.cusps.iter().map(|c| c.den() as u64).collect()
    }

    pub fn max_denominator(&self) -> u64 {
        self.cusps.iter().map(|c| c.den() as u64).max().unwrap_or(0)
    }

    pub fn free_sides(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == SideLabel::Free).collect()
    }

    pub fn is_maximal(&self) -> bool {
        !self.labels.contains(&SideLabel::Free)
    }

    pub fn count_label(&self, pred: impl Fn(SideLabel) -> bool) -> usize {
        self.labels.iter().filter(|&&l| pred(l)).count()
    }

    /// Partner side of every side: itself for even/odd, `None` for free.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let last = self.labels.len() - 1;
        let mut first: HashMap<u32, usize> = HashMap::new();
        let mut out = vec![None; self.labels.len()];
        for (i, l) in self.labels.iter().enumerate() {
            out[i] = match l {
                SideLabel::Vertical => Some(if i == 0 { last } else { 0 }),
                SideLabel::Even | SideLabel::Odd => Some(i),
                SideLabel::Free => None,
                SideLabel::Paired(k) => match first.get(k) {
                    Some(&j) => {
                        out[j] = Some(i);
                        Some(j)
                    }
                    None => {
                        first.insert(*k, i);
                        None
                    }
                },
            };
        }
        out
    }

    /// Insert `extra` cusps (each strictly inside `[0, 1]`) and relabel.
    pub(crate) fn with_cusps(&self, extra: &[ExtFrac]) -> Result<Self> {
        let mut cusps: Vec<ExtFrac> = self.cusps.iter().chain(extra).copied().collect();
        cusps.sort_by(|a, b| a.cmp_circular(b));
        cusps.dedup();
        Self::classify(self.n, cusps)
    }
}

impl fmt::Display for LabeledPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cusps: Vec<String> = self.cusps.iter().map(|c| c.to_string()).collect();
        let sigma: Vec<String> = self.sigma().iter().map(|c| c.to_string()).collect();
        write!(f, "n={} cusps=[{}] sigma=({})", self.n, cusps.join(", "), sigma.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    n: u64,
    cusps: Vec<String>,
    labels: Vec<i64>,
}

impl Serialize for LabeledPolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolygonRepr {
            n: self.n,
            cusps: self.cusps.iter().map(|c| c.to_string()).collect(),
            labels: self.sigma(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledPolygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolygonRepr::deserialize(d)?;
        let parse = || -> Result<LabeledPolygon> {
            let cusps = repr.cusps.iter().map(|c| c.parse()).collect::<Result<Vec<ExtFrac>>>()?;
            let labels = repr.labels.iter().map(|&c| SideLabel::from_code(c)).collect::<Result<Vec<_>>>()?;
            LabeledPolygon::from_parts(repr.n, cusps, labels)
        };
        parse().map_err(serde::de::Error::custom)
    }
}

/// Attach the Farey triangle on the free side `side` and relabel.
pub fn attach_triangle(p: &LabeledPolygon, side: usize) -> Result<LabeledPolygon> {
    match p.labels.get(side) {
        Some(SideLabel::Free) => {}
        Some(l) => return Err(Error::pre(format!("side {side} is not free (label {})", l.code()))),
        None => return Err(Error::pre(format!("no side {side}"))),
    }
    let (x, y) = p.side(side);
    let m = mediant(&x, &y)?;
    let mut cusps = p.cusps.clone();
    cusps.insert(side + 1, m);
    LabeledPolygon::classify(p.n, cusps)
}

/// Order in which free sides are expanded by [`grow_maximal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// First free side in cusp order; pairs numbered left to right.
    #[default]
    Leftmost,
    /// Mirror image of `Leftmost`; pairs numbered right to left.
    Rightmost,
    /// Free side with the smallest mediant denominator, leftmost on ties.
    SmallestMediant,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            "smallest-mediant" => Ok(Strategy::SmallestMediant),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GrowState {
    Free,
    Even,
    Odd,
    Paired(usize),
    Interior,
}

struct GrowSide {
    left: ExtFrac,
    right: ExtFrac,
    dens: (u64, u64),
    state: GrowState,
    children: Option<(usize, usize)>,
}

/// Incremental triangle attachment with constant-time partner lookup.
struct Grower {
    n: u64,
    sides: Vec<GrowSide>,
    finder: PairFinder,
}

impl Grower {
    fn new(n: u64) -> Self {
        let mut g = Grower {
            n,
            sides: Vec::new(),
            finder: PairFinder::new(n),
        };
        g.push_side(ExtFrac::ZERO, ExtFrac::ONE).expect("(0, 1) fits");
        g
    }

    fn push_side(&mut self, left: ExtFrac, right: ExtFrac) -> Result<usize> {
        let id = self.sides.len();
        let dens = (den_u64(&left)?, den_u64(&right)?);
        let (even, odd) = residue_sq_sum(self.n, dens.0, dens.1);
        let state = if even {
            GrowState::Even
        } else if odd {
            GrowState::Odd
        } else if let Some(p) = self.finder.find(dens, id) {
            self.finder.remove(p);
            self.sides[p].state = GrowState::Paired(id);
            GrowState::Paired(p)
        } else {
            self.finder.insert(id, dens);
            GrowState::Free
        };
        self.sides.push(GrowSide {
            left,
            right,
            dens,
            state,
            children: None,
        });
        Ok(id)
    }

    fn attach(&mut self, id: usize) -> Result<(usize, usize)> {
        debug_assert_eq!(self.sides[id].state, GrowState::Free);
        self.finder.remove(id);
        self.sides[id].state = GrowState::Interior;
        let (l, r) = (self.sides[id].left, self.sides[id].right);
        let m = mediant(&l, &r)?;
        let a = self.push_side(l, m)?;
        let b = self.push_side(m, r)?;
        self.sides[id].children = Some((a, b));
        Ok((a, b))
    }

    fn is_free(&self, id: usize) -> bool {
        self.sides[id].state == GrowState::Free
    }

    fn mediant_den(&self, id: usize) -> u64 {
        let (a, b) = self.sides[id].dens;
        a.saturating_add(b)
    }

    fn finish(self, dir: PairNumbering) -> Result<LabeledPolygon> {
        // in-order walk over the attachment tree
        let mut leaves = Vec::new();
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            match self.sides[id].children {
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
                None => leaves.push(id),
            }
        }
        let pos: HashMap<usize, usize> = leaves.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let classes: Vec<SideClass> = leaves
            .iter()
            .map(|&id| match self.sides[id].state {
                GrowState::Even => SideClass::Even,
                GrowState::Odd => SideClass::Odd,
                GrowState::Paired(p) => SideClass::PairedWith(pos[&p]),
                GrowState::Free | GrowState::Interior => SideClass::Free,
            })
            .collect();
        let mut cusps = vec![ExtFrac::INFINITY, ExtFrac::ZERO];
        cusps.extend(leaves.iter().map(|&id| self.sides[id].right));
        let mut labels = vec![SideLabel::Vertical];
        labels.extend(number_pairs(&classes, dir));
        labels.push(SideLabel::Vertical);
        Ok(LabeledPolygon { n: self.n, cusps, labels })
    }
}

/// Position key for tie-breaking: the left cusp of a side in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct LeftCusp(ExtFrac);

impl Ord for LeftCusp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_circular(&other.0)
    }
}

impl PartialOrd for LeftCusp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grow a maximal Γ0(n)-polygon from the triangle `(0, 1, ∞)` by attaching
/// Farey triangles to free sides until none remain.
pub fn grow_maximal(n: u64, strategy: Strategy) -> Result<LabeledPolygon> {
    if n < 2 {
        return Err(Error::pre("level must be at least 2"));
    }
    let mut g = Grower::new(n);
    match strategy {
        Strategy::Leftmost | Strategy::Rightmost => {
            let mut stack = vec![0usize];
            while let Some(id) = stack.pop() {
                if !g.is_free(id) {
                    continue;
                }
                let (a, b) = g.attach(id)?;
                if strategy == Strategy::Leftmost {
                    stack.extend([b, a]);
                } else {
                    stack.extend([a, b]);
                }
            }
        }
        Strategy::SmallestMediant => {
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((g.mediant_den(0), LeftCusp(g.sides[0].left), 0usize)));
            while let Some(Reverse((_, _, id))) = heap.pop() {
                if !g.is_free(id) {
                    continue;
                }
                let (a, b) = g.attach(id)?;
                for c in [a, b] {
                    if g.is_free(c) {
                        heap.push(Reverse((g.mediant_den(c), LeftCusp(g.sides[c].left), c)));
                    }
                }
            }
        }
    }
    let dir = match strategy {
        Strategy::Rightmost => PairNumbering::RightToLeft,
        _ => PairNumbering::LeftToRight,
    };
    g.finish(dir)
}

pub fn is_maximal(p: &LabeledPolygon) -> bool {
    p.is_maximal()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingKind {
    Translation,
    Even,
    Odd,
    Paired,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SidePairing {
    pub side: usize,
    pub partner: usize,
    pub kind: PairingKind,
    pub matrix: PslMat,
}

/// The side-pairing rule of a maximal polygon: one element per side.
///
/// Vertical sides get `T` and `T⁻¹`; an even side `(p, q)` is flipped onto
/// `(q, p)`; a paired side is carried onto its reversed partner; an odd side
/// `(p, q)` with exterior mediant `m` gets the rotation taking `(p, m)` to
/// `(m, q)`.
pub fn side_pairing_system(p: &LabeledPolygon) -> Result<Vec<SidePairing>> {
    if !p.is_maximal() {
        return Err(Error::pre("side pairing needs a maximal polygon"));
    }
    let partners = p.partners();
    let last = p.num_sides() - 1;
    let t = PslMat::translation();
    (0..p.num_sides())
        .map(|i| {
            let partner = partners[i].ok_or_else(|| Error::pre(format!("side {i} has no partner")))?;
            let (x, y) = p.side(i);
            let (kind, matrix) = match p.labels[i] {
                SideLabel::Vertical if i == 0 => (PairingKind::Translation, t),
                SideLabel::Vertical => (PairingKind::Translation, t.inverse()),
                SideLabel::Even => (PairingKind::Even, edge_transport((x, y), (y, x))?),
                SideLabel::Odd => {
                    let m = mediant(&x, &y)?;
                    (PairingKind::Odd, edge_transport((x, m), (m, y))?)
                }
                SideLabel::Paired(_) => {
                    let (u, w) = p.side(partner);
                    (PairingKind::Paired, edge_transport((x, y), (w, u))?)
                }
                SideLabel::Free => unreachable!("maximal polygons have no free sides"),
            };
            debug_assert!(i != last || partner == 0);
            Ok(SidePairing {
                side: i,
                partner,
                kind,
                matrix,
            })
        })
        .collect()
}

/// Number of cusp classes after gluing the cusps of a maximal polygon along
/// its side-pairing rule.
pub fn cusp_classes(p: &LabeledPolygon) -> Result<usize> {
    let pairing = side_pairing_system(p)?;
    let index: HashMap<ExtFrac, usize> = p.cusps.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut parent: Vec<usize> = (0..p.cusps.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let lookup = |x: ExtFrac| {
        index
            .get(&x)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("pairing image {x} is not a cusp")))
    };
    for sp in &pairing {
        let (x, y) = p.side(sp.side);
        let glue: Vec<(ExtFrac, ExtFrac)> = match sp.kind {
            // the rotation about the cone point carries q to p
            PairingKind::Odd => vec![(y, sp.matrix.act(&y)?)],
            _ => vec![(x, sp.matrix.act(&x)?), (y, sp.matrix.act(&y)?)],
        };
        for (u, w) in glue {
            let (a, b) = (root(&mut parent, lookup(u)?), root(&mut parent, lookup(w)?));
            parent[a] = b;
        }
    }
    Ok((0..p.cusps.len()).filter(|&i| root(&mut parent, i) == i).count())
}

/// Denominator pairs of all sides away from `∞`.
pub fn inner_side_denominators(p: &LabeledPolygon) -> Vec<(u64, u64)> {
    (1..p.num_sides() - 1).map(|i| p.side_denominators(i)).collect()
}
