//! n-Farey triples and the constructions built on them.
//!
//! Three co-prime pairs `(a_i, b_i)` form an n-Farey triple when
//! `a_{i+1}·a_i + (a_{i+1} + b_{i+1})·b_i = n` for every `i` mod 3. The free
//! sides of `hull(F_v*)`, `v = ⌊√n⌋`, fall apart into such triples when `n`
//! is a prime or a prime square; attaching one triangle per triple then
//! closes the polygon.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{close_primes, floor_sqrt_4n_3, gcd, inv_mod, is_prime, isqrt, prime_or_square};
use crate::error::{Error, Result};
use crate::frac::{mediant, ExtFrac};
use crate::polygon::LabeledPolygon;

pub type Pair = (u64, u64);

/// An n-Farey triple in canonical rotation: `a₀+b₀` is minimal and strictly
/// below `a₁+b₁` (it may equal `a₂+b₂`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyTriple {
    pairs: [Pair; 3],
}

fn relation(n: u64, cur: Pair, next: Pair) -> bool {
    let (a0, b0) = (cur.0 as u128, cur.1 as u128);
    let (a1, b1) = (next.0 as u128, next.1 as u128);
    a1 * a0 + (a1 + b1) * b0 == n as u128
}

fn cyclic_ok(n: u64, p: &[Pair; 3]) -> bool {
    (0..3).all(|i| relation(n, p[i], p[(i + 1) % 3]))
}

fn sum(p: Pair) -> u64 {
    p.0 + p.1
}

impl FareyTriple {
    /// Validate and rotate into canonical form. The pairs may be given in
    /// either cyclic orientation.
    pub fn new(n: u64, pairs: [Pair; 3]) -> Result<Self> {
        let p = if cyclic_ok(n, &pairs) {
            pairs
        } else {
            [pairs[0], pairs[2], pairs[1]]
        };
        if !is_farey_triple(&p, n) {
            return Err(Error::pre(format!("{pairs:?} is not a {n}-Farey triple")));
        }
        let s = p.map(sum);
        let r = (0..3)
            .find(|&r| s[r] <= s[(r + 1) % 3] && s[r] <= s[(r + 2) % 3] && s[r] < s[(r + 1) % 3])
            .ok_or_else(|| Error::Inconsistent(format!("{pairs:?} has three equal sums")))?;
        Ok(FareyTriple {
            pairs: [p[r], p[(r + 1) % 3], p[(r + 2) % 3]],
        })
    }

    pub fn pairs(&self) -> [Pair; 3] {
        self.pairs
    }

    pub fn sums(&self) -> [u64; 3] {
        self.pairs.map(sum)
    }

    pub fn min_sum(&self) -> u64 {
        sum(self.pairs[0])
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.pairs.contains(&p)
    }

    /// The member whose side receives the new triangle: a pair of minimal
    /// sum, preferring the one with the larger entry. The rule commutes with
    /// the reflection `x ↦ 1 − x`, so symmetric inputs give symmetric
    /// polygons.
    pub fn insertion_pair(&self) -> Pair {
        let [p0, _, p2] = self.pairs;
        if sum(p2) == sum(p0) && p2.0.max(p2.1) > p0.0.max(p0.1) {
            p2
        } else {
            p0
        }
    }
}

impl fmt::Display for FareyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(a0, b0), (a1, b1), (a2, b2)] = self.pairs;
        write!(f, "{{({a0},{b0}), ({a1},{b1}), ({a2},{b2})}}")
    }
}

impl Serialize for FareyTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs.map(|(a, b)| [a, b]).serialize(s)
    }
}

/// Triples listing, `{"n": 41, "triples": [[[5,2],[5,3],[4,3]], …]}`.
#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub n: u64,
    pub triples: Vec<FareyTriple>,
}

/// Distinct, positive, co-prime pairs satisfying the cyclic relation in the
/// given order.
pub fn is_farey_triple(pairs: &[Pair; 3], n: u64) -> bool {
    let distinct = pairs[0] != pairs[1] && pairs[1] != pairs[2] && pairs[0] != pairs[2];
    distinct
        && pairs.iter().all(|&(a, b)| a > 0 && b > 0 && gcd(a, b) == 1)
        && cyclic_ok(n, pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    Triple(FareyTriple),
    /// The two pairs coincide: an odd side on its own.
    Single(Pair),
}

/// Complete `(a₀,b₀), (a₁,b₁)` with `a₁(a₀+b₀) + b₁b₀ = n` by
/// `(a₂,b₂) = (a₀+b₀−b₁, a₁+b₁−a₀)`.
pub fn complete_triple(n: u64, p0: Pair, p1: Pair) -> Result<Completion> {
    let ((a0, b0), (a1, b1)) = (p0, p1);
    if [a0, b0, a1, b1].contains(&0) {
        return Err(Error::pre("pairs must be positive"));
    }
    if !relation(n, p0, p1) {
        return Err(Error::pre(format!("{a1}·({a0}+{b0}) + {b1}·{b0} ≠ {n}")));
    }
    if p0 == p1 {
        return Ok(Completion::Single(p0));
    }
    let a2 = (a0 + b0).checked_sub(b1);
    let b2 = (a1 + b1).checked_sub(a0);
    match (a2, b2) {
        (Some(a2), Some(b2)) if a2 > 0 && b2 > 0 => FareyTriple::new(n, [p0, p1, (a2, b2)])
            .map(Completion::Triple)
            .map_err(|_| Error::NotApplicable(format!("completion ({a2},{b2}) is not co-prime"))),
        _ => Err(Error::NotApplicable(format!("completion of {p0:?}, {p1:?} is not positive"))),
    }
}

/// The unique triple through the free side `(a, b)` of `hull(F_v*)`, found
/// from the solutions of `ax + by = n` in the windows `v−b < x ≤ v` and
/// `v−a < y ≤ v`.
pub fn triple_from_free_side(n: u64, (a, b): Pair) -> Result<FareyTriple> {
    if a == 0 || b == 0 || gcd(a, b) != 1 {
        return Err(Error::pre(format!("({a},{b}) is not a co-prime positive pair")));
    }
    let v = isqrt(n);
    let na = |why: &str| Error::NotApplicable(format!("({a},{b}) mod {n}: {why}"));
    // smallest x ≡ target (mod m) in (v − m, v]
    let window = |target: u64, m: u64| -> Option<u64> {
        let r = (v % m + m - target % m) % m;
        v.checked_sub(r).filter(|&x| x > 0)
    };
    let x2 = window(n % b * inv_mod(a % b, b).unwrap() % b, b)
        .ok_or_else(|| na("no solution with x in the window"))?;
    let y0 = window(n % a * inv_mod(b % a, a).unwrap() % a, a)
        .ok_or_else(|| na("no solution with y in the window"))?;
    let y2 = n.checked_sub(a * x2).ok_or_else(|| na("x too large"))? / b;
    let x0 = n.checked_sub(b * y0).ok_or_else(|| na("y too large"))? / a;
    if a * x2 + b * y2 != n || a * x0 + b * y0 != n || y2 <= x2 || x0 <= y0 {
        return Err(na("windowed solutions are not positive"));
    }
    let pairs = [(x0 - y0, y0), (a, b), (x2, y2 - x2)];
    FareyTriple::new(n, pairs).map_err(|_| na("windowed solutions are not primitive"))
}

fn side_index(p: &LabeledPolygon) -> HashMap<Pair, usize> {
    (1..p.num_sides() - 1).map(|i| (p.side_denominators(i), i)).collect()
}

/// Triples through the free sides of `hull(F_v*)` that avoid `skip`.
fn hull_triples(hull: &LabeledPolygon, skip: &dyn Fn(Pair) -> bool) -> Result<BTreeSet<FareyTriple>> {
    let free: BTreeSet<Pair> = hull.free_sides().iter().map(|&i| hull.side_denominators(i)).collect();
    let mut out = BTreeSet::new();
    for &side in free.iter().filter(|&&s| !skip(s)) {
        let t = triple_from_free_side(hull.level(), side)?;
        if let Some(m) = t.pairs().iter().find(|&&m| !free.contains(&m) || skip(m)) {
            return Err(Error::Inconsistent(format!("triple {t} uses the non-free side {m:?}")));
        }
        out.insert(t);
    }
    Ok(out)
}

fn mediant_on(p: &LabeledPolygon, index: &HashMap<Pair, usize>, side: Pair) -> Result<ExtFrac> {
    let i = *index
        .get(&side)
        .ok_or_else(|| Error::Inconsistent(format!("no side with denominators {side:?}")))?;
    let (x, y) = p.side(i);
    mediant(&x, &y)
}

fn require_maximal(p: LabeledPolygon) -> Result<LabeledPolygon> {
    if p.is_maximal() {
        Ok(p)
    } else {
        Err(Error::Inconsistent(format!("construction left free sides {:?}", p.free_sides())))
    }
}

/// The n-Farey triples among the free sides of `hull(F_v*)` for `n` prime
/// or a prime square.
pub fn farey_triples(n: u64) -> Result<Vec<FareyTriple>> {
    if prime_or_square(n).is_none() {
        return Err(Error::pre(format!("{n} is neither a prime nor a prime square")));
    }
    let hull = LabeledPolygon::farey_hull(n, isqrt(n))?;
    Ok(hull_triples(&hull, &|_| false)?.into_iter().collect())
}

/// Maximal polygon with cusp denominators at most `⌊√(4n/3)⌋` for `n` a
/// prime or a prime square: `hull(F_v*)` plus one triangle per triple.
pub fn build_optimal_polygon(n: u64) -> Result<LabeledPolygon> {
    let triples = farey_triples(n)?;
    let hull = LabeledPolygon::farey_hull(n, isqrt(n))?;
    let index = side_index(&hull);
    let extra = triples
        .iter()
        .map(|t| mediant_on(&hull, &index, t.insertion_pair()))
        .collect::<Result<Vec<_>>>()?;
    require_maximal(hull.with_cusps(&extra)?)
}

fn twin_hypothesis(p: u64, q: u64) -> Result<()> {
    if !(p > 2 && p < q && is_prime(p) && is_prime(q) && close_primes(p, q)) {
        return Err(Error::pre(format!("({p}, {q}) are not close odd primes")));
    }
    Ok(())
}

/// Sides of `hull(F_v*)` that are split directly by the twin construction.
fn twin_special(p: u64, q: u64) -> impl Fn(Pair) -> bool {
    let k = (q - p) / 2;
    move |(a, b)| (a, b) == (k, p) || (a, b) == (p, k) || (a + b == q && k < a && a < p + k)
}

/// Maximal polygon for `n = pq` with `p < q` close odd primes.
///
/// With `2k = q − p` and `v = p + k − 1`, the side `(k, p)` of
/// `hull(F_v*)` is split at denominators `p + k` and then `q`, each side
/// `(i, q − i)` with `k < i < p + k` is split at `q`, `(p, k)` is kept, and
/// all other free sides are closed by triples.
pub fn build_twin_polygon(p: u64, q: u64) -> Result<LabeledPolygon> {
    twin_hypothesis(p, q)?;
    let n = p * q;
    let k = (q - p) / 2;
    let v = p + k - 1;
    if isqrt(n) != v {
        return Err(Error::Inconsistent(format!("⌊√{n}⌋ ≠ {v}")));
    }
    let hull = LabeledPolygon::farey_hull(n, v)?;
    let index = side_index(&hull);
    let special = twin_special(p, q);
    let mut extra = Vec::new();

    let i = *index
        .get(&(k, p))
        .ok_or_else(|| Error::Inconsistent(format!("no side ({k}, {p})")))?;
    let (x, y) = hull.side(i);
    let m = mediant(&x, &y)?;
    extra.push(m);
    extra.push(mediant(&x, &m)?);

    for i in k + 1..p + k {
        extra.push(mediant_on(&hull, &index, (i, q - i))?);
    }
    for t in hull_triples(&hull, &special)? {
        extra.push(mediant_on(&hull, &index, t.insertion_pair())?);
    }
    require_maximal(hull.with_cusps(&extra)?)
}

/// `k(n)`: the number of n-Farey triples among the free sides of
/// `hull(F_v*)`. Defined for primes, prime squares and close `pq`; for
/// `pq` the sides split directly by the twin construction are left out.
pub fn triple_count(n: u64) -> Result<usize> {
    if prime_or_square(n).is_some() {
        return Ok(farey_triples(n)?.len());
    }
    if let Some((p, q)) = crate::arith::twin_pair(n) {
        let hull = LabeledPolygon::farey_hull(n, isqrt(n))?;
        return Ok(hull_triples(&hull, &twin_special(p, q))?.len());
    }
    Err(Error::pre(format!("{n} is not a prime, prime square or close pq")))
}

/// Witness that `n = s·a + t·b` with `s + t > a > t ≥ b ≥ a − s` and
/// `a = ⌊√(4n/3)⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CashewCertificate {
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub b: u64,
}

impl CashewCertificate {
    pub fn is_valid(&self, n: u64) -> bool {
        let CashewCertificate { s, t, a, b } = *self;
        s > 0
            && b > 0
            && a == floor_sqrt_4n_3(n)
            && s as u128 * a as u128 + t as u128 * b as u128 == n as u128
            && s + t > a
            && a > t
            && t >= b
            && b + s >= a
    }
}

/// All certificates, `s` descending then `t` ascending.
pub fn cashew_certificates(n: u64) -> Vec<CashewCertificate> {
    let a = floor_sqrt_4n_3(n);
    if a < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in (1..=(n - 1) / a).rev() {
        let rest = n - s * a;
        for t in 1..a {
            if rest.is_multiple_of(t) {
                let c = CashewCertificate { s, t, a, b: rest / t };
                if c.is_valid(n) {
                    out.push(c);
                }
            }
        }
    }
    out
}

pub fn cashew_certificate(n: u64) -> Option<CashewCertificate> {
    cashew_certificates(n).into_iter().next()
}

pub fn is_cashew(n: u64) -> bool {
    cashew_certificate(n).is_some()
}
