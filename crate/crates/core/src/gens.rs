//! Independent generating systems read off maximal polygons.
//!
//! Of every pair `{g, g⁻¹}` in a side-pairing rule only one element is kept:
//! `T` for the vertical sides, the element whose source side lies further
//! left for paired sides, and the torsion element for even and odd sides.
//! The result is a free-product decomposition
//! `Γ0(n) = ⋆ ⟨g_i⟩ ⋆ ⟨T⟩`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::group_invariants;
use crate::polygon::{side_pairing_system, LabeledPolygon};
use crate::psl::{ElementOrder, PslMat};

pub use crate::polygon::PairingKind as GeneratorKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorRepr")]
pub struct Generator {
    pub matrix: PslMat,
    pub kind: GeneratorKind,
    pub order: ElementOrder,
    /// Index of the source side in the polygon (not serialized).
    #[serde(skip)]
    pub side: usize,
}

#[derive(Deserialize)]
struct GeneratorRepr {
    matrix: PslMat,
    kind: GeneratorKind,
    order: ElementOrder,
}

impl TryFrom<GeneratorRepr> for Generator {
    type Error = Error;

    fn try_from(r: GeneratorRepr) -> Result<Self> {
        if r.matrix.order() != r.order {
            return Err(Error::Parse(format!("{} does not have order {:?}", r.matrix, r.order)));
        }
        Ok(Generator {
            matrix: r.matrix,
            kind: r.kind,
            order: r.order,
            side: 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSystem {
    pub n: u64,
    pub generators: Vec<Generator>,
}

impl GeneratingSystem {
    pub fn count_order(&self, order: ElementOrder) -> usize {
        self.generators.iter().filter(|g| g.order == order).count()
    }
}

/// Independent generators of Γ0(n) from a maximal polygon.
pub fn independent_system(p: &LabeledPolygon) -> Result<GeneratingSystem> {
    let pairing = side_pairing_system(p)?;
    let last = p.num_sides() - 1;
    let generators = pairing
        .into_iter()
        .filter(|sp| match sp.kind {
            GeneratorKind::Translation => sp.side != last,
            GeneratorKind::Paired => sp.side < sp.partner,
            GeneratorKind::Even | GeneratorKind::Odd => true,
        })
        .map(|sp| Generator {
            matrix: sp.matrix,
            kind: sp.kind,
            order: sp.matrix.order(),
            side: sp.side,
        })
        .collect();
    Ok(GeneratingSystem { n: p.level(), generators })
}

/// Size constraints checked by [`verify_system`] on top of the generic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Membership, torsion orders and free-factor counts only.
    Generic,
    /// Every non-translation has `(2,1)`-entry `n`.
    Optimal,
    /// `n = pq`: entries in `{n, 2n}`, exactly `q − p` of them `2n`.
    Twin { p: u64, q: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: u64,
    pub generators: usize,
    pub order2: usize,
    pub order3: usize,
    pub infinite: usize,
    /// Non-translations with `(2,1)`-entry `2n`.
    pub double_entries: usize,
    pub max_lower_left: u128,
    pub max_trace: u128,
    pub max_frobenius_sq: u128,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} generators={} (order 2: {}, order 3: {}, infinite: {}) max c={} max |tr|={} max ‖g‖²={}",
            self.n,
            self.generators,
            self.order2,
            self.order3,
            self.infinite,
            self.max_lower_left,
            self.max_trace,
            self.max_frobenius_sq
        )
    }
}

fn expected_order(kind: GeneratorKind) -> ElementOrder {
    match kind {
        GeneratorKind::Even => ElementOrder::Two,
        GeneratorKind::Odd => ElementOrder::Three,
        GeneratorKind::Translation | GeneratorKind::Paired => ElementOrder::Infinite,
    }
}

/// Check a generating system; every violation is listed in the error.
pub fn verify_system(sys: &GeneratingSystem, expect: Expectation) -> Result<VerificationReport> {
    let n = sys.n;
    let mut problems = Vec::new();
    let mut report = VerificationReport {
        n,
        generators: sys.generators.len(),
        order2: sys.count_order(ElementOrder::Two),
        order3: sys.count_order(ElementOrder::Three),
        infinite: sys.count_order(ElementOrder::Infinite),
        double_entries: 0,
        max_lower_left: 0,
        max_trace: 0,
        max_frobenius_sq: 0,
    };
    if let Expectation::Twin { p, q } = expect {
        if p.checked_mul(q) != Some(n) || q <= p {
            return Err(Error::pre(format!("{p}·{q} is not the level {n}")));
        }
    }

    let t = PslMat::translation();
    let translations = sys.generators.iter().filter(|g| g.kind == GeneratorKind::Translation).count();
    if translations != 1 || !sys.generators.iter().any(|g| g.matrix == t || g.matrix == t.inverse()) {
        problems.push("the system must contain T exactly once".to_string());
    }
    let mut seen = HashSet::new();
    for g in &sys.generators {
        if (seen.contains(&g.matrix.inverse()) || !seen.insert(g.matrix))
            && g.order == ElementOrder::Infinite {
                problems.push(format!("{} repeats an element or its inverse", g.matrix));
            }
    }

    for g in &sys.generators {
        let m = g.matrix;
        if !m.in_gamma0(n) {
            problems.push(format!("{m} is not in Γ0({n})"));
        }
        if m.order() != g.order || g.order != expected_order(g.kind) {
            problems.push(format!("{m} ({:?}) has order {:?}", g.kind, m.order()));
        }
        if g.kind == GeneratorKind::Translation {
            continue;
        }
        let (tr, frob) = m.norm_stats()?;
        let c = m.lower_left().unsigned_abs();
        report.max_lower_left = report.max_lower_left.max(c);
        report.max_trace = report.max_trace.max(tr);
        report.max_frobenius_sq = report.max_frobenius_sq.max(frob);
        let n = n as u128;
        if c == 2 * n {
            report.double_entries += 1;
        }
        let sized = match expect {
            Expectation::Generic => false,
            Expectation::Optimal => {
                if c != n {
                    problems.push(format!("{m}: (2,1)-entry {c} ≠ {n}"));
                }
                true
            }
            Expectation::Twin { .. } => {
                if c != n && c != 2 * n {
                    problems.push(format!("{m}: (2,1)-entry {c} ∉ {{{n}, {}}}", 2 * n));
                }
                true
            }
        };
        if sized {
            if tr + 2 > c {
                problems.push(format!("{m}: |trace| {tr} > {c} − 2"));
            }
            let bound = (2 * c).saturating_sub(1);
            if frob >= bound * bound {
                problems.push(format!("{m}: ‖g‖² = {frob} ≥ {bound}²"));
            }
        }
    }

    if let Expectation::Twin { p, q } = expect {
        if report.double_entries as u64 != q - p {
            problems.push(format!("{} generators with entry 2n, expected {}", report.double_entries, q - p));
        }
    }

    let inv = group_invariants(n)?;
    let free = 2 * inv.genus + inv.v_inf - 1;
    if (report.order2 as u64, report.order3 as u64, report.infinite as u64) != (inv.v2, inv.v3, free) {
        problems.push(format!(
            "factor counts ({}, {}, {}) differ from (v2, v3, 2g + v∞ − 1) = ({}, {}, {free})",
            report.order2, report.order3, report.infinite, inv.v2, inv.v3
        ));
    }

    if problems.is_empty() {
        Ok(report)
    } else {
        Err(Error::Verification(problems.join("; ")))
    }
}
