//! PSL(2,ℤ) elements as sign-normalized integer matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, dot};
use crate::error::{Error, Result};
use crate::frac::{is_farey_pair, ExtFrac};

/// `[[a, b], [c, d]]` with `ad − bc = 1`, normalized so that `c > 0`, or
/// `c = 0` and `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i128; 2]; 2]", into = "[[i128; 2]; 2]")]
pub struct PslMat {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementOrder {
    One,
    Two,
    Three,
    Infinite,
}

impl ElementOrder {
    pub fn as_number(self) -> Option<u32> {
        match self {
            ElementOrder::One => Some(1),
            ElementOrder::Two => Some(2),
            ElementOrder::Three => Some(3),
            ElementOrder::Infinite => None,
        }
    }
}

impl Serialize for ElementOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_number() {
            Some(k) => s.serialize_u32(k),
            None => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for ElementOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(1) => Ok(ElementOrder::One),
            Raw::Num(2) => Ok(ElementOrder::Two),
            Raw::Num(3) => Ok(ElementOrder::Three),
            Raw::Word(w) if w == "infinite" => Ok(ElementOrder::Infinite),
            _ => Err(serde::de::Error::custom("order must be 1, 2, 3 or \"infinite\"")),
        }
    }
}

impl PslMat {
    pub const IDENTITY: PslMat = PslMat { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = arith::sub(arith::mul(a, d)?, arith::mul(b, c)?)?;
        if det != 1 {
            return Err(Error::pre(format!("determinant of [[{a},{b}],[{c},{d}]] is {det}")));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: i128, b: i128, c: i128, d: i128) -> Self {
        if c < 0 || (c == 0 && a < 0) {
            PslMat { a: -a, b: -b, c: -c, d: -d }
        } else {
            PslMat { a, b, c, d }
        }
    }

    /// `(S, R, T)` with `S: z ↦ −1/z`, `R: z ↦ 1/(1−z)`, `T = R⁻¹S: z ↦ z+1`.
    pub fn constants() -> (PslMat, PslMat, PslMat) {
        (
            Self::normalized(0, 1, -1, 0),
            Self::normalized(0, 1, -1, 1),
            Self::normalized(1, 1, 0, 1),
        )
    }

    pub fn translation() -> PslMat {
        PslMat { a: 1, b: 1, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [[i128; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// The (2,1) entry; non-negative by normalization.
    pub fn lower_left(&self) -> i128 {
        self.c
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn compose(&self, h: &PslMat) -> Result<PslMat> {
        let a = dot(self.a, h.a, self.b, h.c)?;
        let b = dot(self.a, h.b, self.b, h.d)?;
        let c = dot(self.c, h.a, self.d, h.c)?;
        let d = dot(self.c, h.b, self.d, h.d)?;
        Ok(Self::normalized(a, b, c, d))
    }

    pub fn inverse(&self) -> PslMat {
        Self::normalized(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, k: u32) -> Result<PslMat> {
        let mut acc = PslMat::IDENTITY;
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == PslMat::IDENTITY
    }

    /// Linear fractional action on ℚ∪{∞}.
    pub fn act(&self, x: &ExtFrac) -> Result<ExtFrac> {
        let p = dot(self.a, x.num(), self.b, x.den())?;
        let q = dot(self.c, x.num(), self.d, x.den())?;
        ExtFrac::reduce(p, q)
    }

    pub fn in_gamma0(&self, n: u64) -> bool {
        n != 0 && self.c % n as i128 == 0
    }

    pub fn order(&self) -> ElementOrder {
        if self.is_identity() {
            return ElementOrder::One;
        }
        match self.trace().abs() {
            0 => ElementOrder::Two,
            1 => ElementOrder::Three,
            _ => ElementOrder::Infinite,
        }
    }

    /// `(|tr g|, ‖g‖_F²)`.
    pub fn norm_stats(&self) -> Result<(u128, u128)> {
        let tr = arith::add(self.a, self.d)?.unsigned_abs();
        let f = arith::add(dot(self.a, self.a, self.b, self.b)?, dot(self.c, self.c, self.d, self.d)?)?;
        Ok((tr, f as u128))
    }
}

impl TryFrom<[[i128; 2]; 2]> for PslMat {
    type Error = Error;

    fn try_from(m: [[i128; 2]; 2]) -> Result<Self> {
        PslMat::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<PslMat> for [[i128; 2]; 2] {
    fn from(m: PslMat) -> Self {
        m.entries()
    }
}

impl fmt::Display for PslMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// The unique element of PSL(2,ℤ) taking the oriented Farey edge `src`
/// endpoint-wise onto `dst`.
pub fn edge_transport(src: (ExtFrac, ExtFrac), dst: (ExtFrac, ExtFrac)) -> Result<PslMat> {
    for (x, y) in [src, dst] {
        if !is_farey_pair(&x, &y) {
            return Err(Error::pre(format!("({x}, {y}) is not a Farey pair")));
        }
    }
    // columns are the (num, den) representatives with den ≥ 0
    let det_a = src.0.det(&src.1)?;
    let det_b = dst.0.det(&dst.1)?;
    // det(den, num order) is minus the column determinant, but only the
    // comparison of the two signs matters
    let flip = if det_a == det_b { 1 } else { -1 };
    let (ba, bc) = (flip * dst.0.num(), flip * dst.0.den());
    let (bb, bd) = (dst.1.num(), dst.1.den());
    let (aa, ab, ac, ad) = (src.0.num(), src.1.num(), src.0.den(), src.1.den());
    // A⁻¹ = adj(A) / det(A), det(A) = ±1
    let col_det = arith::sub(arith::mul(aa, ad)?, arith::mul(ab, ac)?)?;
    let (ia, ib, ic, id) = (col_det * ad, -col_det * ab, -col_det * ac, col_det * aa);
    let a = dot(ba, ia, bb, ic)?;
    let b = dot(ba, ib, bb, id)?;
    let c = dot(bc, ia, bd, ic)?;
    let d = dot(bc, ib, bd, id)?;
    PslMat::new(a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::pair_from_denominators;
    use proptest::prelude::*;

    fn f(p: i128, q: i128) -> ExtFrac {
        ExtFrac::reduce(p, q).unwrap()
    }

    fn m(a: i128, b: i128, c: i128, d: i128) -> PslMat {
        PslMat::new(a, b, c, d).unwrap()
    }

    #[test]
    fn generator_relations() {
        let (s, r, t) = PslMat::constants();
        assert!(s.compose(&s).unwrap().is_identity());
        assert!(r.pow(3).unwrap().is_identity());
        assert_eq!(r.inverse().compose(&s).unwrap(), t);
        assert_eq!(s.order(), ElementOrder::Two);
        assert_eq!(r.order(), ElementOrder::Three);
        assert_eq!(t.order(), ElementOrder::Infinite);
        assert_eq!(PslMat::IDENTITY.order(), ElementOrder::One);
    }

    #[test]
    fn compose_inverse() {
        let t = PslMat::translation();
        assert!(t.compose(&t.inverse()).unwrap().is_identity());
        assert_eq!(t.compose(&t).unwrap(), m(1, 2, 0, 1));
        assert!(PslMat::new(1, 1, 1, 1).is_err());
        // sign normalization
        assert_eq!(m(-1, 0, 0, -1), PslMat::IDENTITY);
        assert_eq!(m(-10, 3, -17, 5).entries(), [[10, -3], [17, -5]]);
    }

    #[test]
    fn action_examples() {
        let (s, _, t) = PslMat::constants();
        assert_eq!(t.act(&ExtFrac::INFINITY).unwrap(), ExtFrac::INFINITY);
        assert_eq!(s.act(&f(0, 1)).unwrap(), ExtFrac::INFINITY);
        assert_eq!(m(10, -3, 17, -5).act(&f(1, 4)).unwrap(), f(2, 3));
    }

    #[test]
    fn gamma0_membership() {
        let (s, _, t) = PslMat::constants();
        assert!(t.in_gamma0(17));
        assert!(m(10, -3, 17, -5).in_gamma0(17));
        assert!(!s.in_gamma0(2));
    }

    #[test]
    fn norms() {
        assert_eq!(PslMat::IDENTITY.norm_stats().unwrap(), (2, 2));
        assert_eq!(m(10, -3, 17, -5).norm_stats().unwrap(), (5, 423));
        assert_eq!(PslMat::translation().norm_stats().unwrap(), (2, 3));
    }

    #[test]
    fn transport_examples() {
        let z = f(0, 1);
        let inf = ExtFrac::INFINITY;
        assert!(edge_transport((z, inf), (z, inf)).unwrap().is_identity());
        let g = edge_transport((f(1, 4), f(1, 3)), (f(2, 3), f(1, 2))).unwrap();
        assert_eq!(g.entries(), [[10, -3], [17, -5]]);
        let g = edge_transport((f(0, 1), f(1, 4)), (f(1, 4), f(0, 1))).unwrap();
        assert_eq!(g.entries(), [[4, -1], [17, -4]]);
        assert_eq!(g.order(), ElementOrder::Two);
        assert!(edge_transport((f(1, 4), f(1, 2)), (z, inf)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = m(10, -3, 17, -5);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, "[[10,-3],[17,-5]]");
        assert_eq!(serde_json::from_str::<PslMat>(&s).unwrap(), g);
        assert!(serde_json::from_str::<PslMat>("[[1,1],[1,1]]").is_err());
    }

    fn arb_mat() -> impl Strategy<Value = PslMat> {
        // products of S, T^k keep the entries small but generic
        proptest::collection::vec(-4i128..=4, 1..6).prop_map(|ks| {
            let (s, _, _) = PslMat::constants();
            ks.iter().fold(PslMat::IDENTITY, |acc, &k| {
                let tk = m(1, k, 0, 1);
                acc.compose(&tk).unwrap().compose(&s).unwrap()
            })
        })
    }

    fn arb_pair() -> impl Strategy<Value = (ExtFrac, ExtFrac)> {
        (1u64..400, 1u64..400, arb_mat(), any::<bool>())
            .prop_filter("coprime", |(a, b, _, _)| crate::arith::gcd(*a, *b) == 1)
            .prop_map(|(a, b, g, rev)| {
                let (x, y) = pair_from_denominators(a, b).unwrap();
                let (x, y) = (g.act(&x).unwrap(), g.act(&y).unwrap());
                if rev { (y, x) } else { (x, y) }
            })
    }

    proptest! {
        #[test]
        fn action_is_a_group_action(g in arb_mat(), h in arb_mat(), p in -50i128..50, q in 0i128..50) {
            prop_assume!(p != 0 || q != 0);
            let x = f(p, q);
            let gh = g.compose(&h).unwrap();
            prop_assert_eq!(gh.act(&x).unwrap(), g.act(&h.act(&x).unwrap()).unwrap());
        }

        #[test]
        fn compose_normalizes(g in arb_mat(), h in arb_mat()) {
            let gh = g.compose(&h).unwrap();
            let e = gh.entries();
            prop_assert!(e[1][0] > 0 || (e[1][0] == 0 && e[0][0] > 0));
            prop_assert_eq!(PslMat::new(e[0][0], e[0][1], e[1][0], e[1][1]).unwrap(), gh);
            prop_assert!(gh.compose(&gh.inverse()).unwrap().is_identity());
        }

        #[test]
        fn torsion_matches_trace(g in arb_mat()) {
            let (tr, _) = g.norm_stats().unwrap();
            match g.order() {
                ElementOrder::Two => prop_assert!(tr == 0 && g.pow(2).unwrap().is_identity()),
                ElementOrder::Three => prop_assert!(tr == 1 && g.pow(3).unwrap().is_identity()),
                ElementOrder::One => prop_assert!(g.is_identity()),
                ElementOrder::Infinite => prop_assert!(tr >= 2),
            }
        }

        #[test]
        fn transport_maps_edges(e in arb_pair(), f2 in arb_pair()) {
            let g = edge_transport(e, f2).unwrap();
            prop_assert_eq!(g.act(&e.0).unwrap(), f2.0);
            prop_assert_eq!(g.act(&e.1).unwrap(), f2.1);
            let back = edge_transport(f2, e).unwrap();
            prop_assert_eq!(back, g.inverse());
            let flip = edge_transport(e, (e.1, e.0)).unwrap();
            prop_assert_eq!(flip.order(), ElementOrder::Two);
        }
    }
}
