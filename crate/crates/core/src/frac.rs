//! Reduced extended rationals, Farey pairs, mediants and Farey sequences.
//!
//! Every cusp is an [`ExtFrac`]: a reduced `num/den` with `den ≥ 0`, and the
//! single point at infinity stored as `1/0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::arith::{self, gcd, gcd_i128, inv_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtFrac {
    num: i128,
    den: i128,
}

impl ExtFrac {
    pub const INFINITY: ExtFrac = ExtFrac { num: 1, den: 0 };
    pub const ZERO: ExtFrac = ExtFrac { num: 0, den: 1 };
    pub const ONE: ExtFrac = ExtFrac { num: 1, den: 1 };

    /// Canonical reduced form of `p/q`. Any `p/0` is the point at infinity.
    pub fn reduce(p: i128, q: i128) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidFraction);
        }
        if q == 0 {
            return Ok(Self::INFINITY);
        }
        let g = gcd_i128(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = p.checked_neg().ok_or(Error::Overflow)?;
            q = q.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(ExtFrac { num: p, den: q })
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// `den·other.num − num·other.den`; `±1` exactly for Farey pairs.
    pub fn det(&self, other: &ExtFrac) -> Result<i128> {
        arith::sub(
            arith::mul(self.den, other.num)?,
            arith::mul(self.num, other.den)?,
        )
    }

    /// Linear order on finite values; `None` if either side is `∞`.
    pub fn cmp_finite(&self, other: &ExtFrac) -> Option<Ordering> {
        if self.is_infinite() || other.is_infinite() {
            return None;
        }
        let l = self.num.checked_mul(other.den)?;
        let r = other.num.checked_mul(self.den)?;
        Some(l.cmp(&r))
    }

    /// Circular order on ℚ∪{∞} cut open at `∞`, which sorts first.
    pub fn cmp_circular(&self, other: &ExtFrac) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => {
                // values stay far below i64 range in practice; fall back to
                // floating comparison only if the exact products overflow
                self.cmp_finite(other).unwrap_or_else(|| {
                    let x = self.num as f64 / self.den as f64;
                    let y = other.num as f64 / other.den as f64;
                    x.total_cmp(&y)
                })
            }
        }
    }
}

impl fmt::Display for ExtFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExtFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i128 = p.parse().map_err(|_| bad())?;
        let q: i128 = q.parse().map_err(|_| bad())?;
        ExtFrac::reduce(p, q)
    }
}

pub fn is_farey_pair(x: &ExtFrac, y: &ExtFrac) -> bool {
    matches!(x.det(y), Ok(1) | Ok(-1))
}

/// Third vertex `m` of the positively oriented Farey triangle `(x, m, y)`.
pub fn mediant(x: &ExtFrac, y: &ExtFrac) -> Result<ExtFrac> {
    match x.det(y)? {
        1 => ExtFrac::reduce(arith::add(x.num, y.num)?, arith::add(x.den, y.den)?),
        // flipping the sign of y's representative turns the determinant to +1
        -1 => ExtFrac::reduce(arith::sub(x.num, y.num)?, arith::sub(x.den, y.den)?),
        _ => Err(Error::pre(format!("({x}, {y}) is not a Farey pair"))),
    }
}

/// Extended Farey sequence `[∞, 0, …, 1]` of order `k`, produced by an
/// in-order Stern–Brocot walk.
pub fn farey_sequence(k: u64) -> Result<Vec<ExtFrac>> {
    if k == 0 {
        return Err(Error::pre("Farey sequence order must be positive"));
    }
    let k = k as i128;
    let mut out = vec![ExtFrac::INFINITY, ExtFrac::ZERO];
    // stack of pending (left, right) intervals; right endpoints are emitted
    // once their left subtree is finished
    enum Job {
        Split(ExtFrac, ExtFrac),
        Emit(ExtFrac),
    }
    let mut stack = vec![Job::Emit(ExtFrac::ONE), Job::Split(ExtFrac::ZERO, ExtFrac::ONE)];
    while let Some(job) = stack.pop() {
        match job {
            Job::Emit(x) => out.push(x),
            Job::Split(l, r) => {
                if l.den + r.den > k {
                    continue;
                }
                let m = ExtFrac {
                    num: l.num + r.num,
                    den: l.den + r.den,
                };
                stack.push(Job::Split(m, r));
                stack.push(Job::Emit(m));
                stack.push(Job::Split(l, m));
            }
        }
    }
    Ok(out)
}

/// The unique Farey pair `(y/a, x/b)` with `0 ≤ y/a < x/b ≤ 1`, i.e. the
/// solution of `ax − by = 1` with `0 ≤ y < a`, `1 ≤ x ≤ b`.
pub fn pair_from_denominators(a: u64, b: u64) -> Result<(ExtFrac, ExtFrac)> {
    if a == 0 || b == 0 {
        return Err(Error::pre("denominators must be positive"));
    }
    if gcd(a, b) != 1 {
        return Err(Error::pre(format!("gcd({a}, {b}) != 1")));
    }
    let x = match inv_mod(a % b, b) {
        Some(0) => b, // b = 1
        Some(x) => x,
        None => unreachable!("coprime inputs are invertible"),
    };
    let y = (a as i128 * x as i128 - 1) / b as i128;
    Ok((
        ExtFrac { num: y, den: a as i128 },
        ExtFrac {
            num: x as i128,
            den: b as i128,
        },
    ))
}

/// Cusp list `[∞, 0, …, 1]` of the normalized polygon whose denominator
/// sequence is `seq = {0, 1, …, 1}`.
pub fn lift_denominator_sequence(seq: &[u64]) -> Result<Vec<ExtFrac>> {
    let bad = |msg: String| Err(Error::InvalidSequence(msg));
    if seq.len() < 3 || seq[0] != 0 || seq[1] != 1 || *seq.last().unwrap() != 1 {
        return bad(format!("{seq:?} does not have the shape {{0, 1, …, 1}}"));
    }
    if seq[1..].contains(&0) {
        return bad("0 may only appear first".into());
    }
    let mut cusps = vec![ExtFrac::INFINITY, ExtFrac::ZERO];
    for w in seq[1..].windows(2) {
        let (a, b) = (w[0], w[1]);
        if gcd(a, b) != 1 {
            return bad(format!("consecutive entries {a}, {b} are not coprime"));
        }
        let (l, r) = pair_from_denominators(a, b)?;
        if l != *cusps.last().unwrap() {
            return bad(format!("side ({a}, {b}) does not continue from {}", cusps.last().unwrap()));
        }
        cusps.push(r);
    }
    if *cusps.last().unwrap() != ExtFrac::ONE {
        return bad("sequence does not end at 1".into());
    }
    Ok(cusps)
}

/// Denominators of a cusp list, `∞` contributing 0.
pub fn denominators(cusps: &[ExtFrac]) -> Vec<u64> {
    cusps.iter().map(|c| c.den as u64).collect()
}
