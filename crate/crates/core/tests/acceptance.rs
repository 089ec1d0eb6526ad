//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::collections::BTreeSet;
use std::time::Instant;

use gamma0::arith::{floor_sqrt_4n_3, gcd, is_prime, isqrt, prime_or_square};
use gamma0::exec::Execution;
use gamma0::frac::{farey_sequence, lift_denominator_sequence, ExtFrac};
use gamma0::gens::{independent_system, verify_system, Expectation};
use gamma0::invariants::{equality_list, group_invariants, m_exact_search, Sieve};
use gamma0::polygon::{classify_side, grow_maximal, side_pairing_system, LabeledPolygon, PairingKind, SideClass, SideLabel, Strategy};
use gamma0::psl::{edge_transport, ElementOrder, PslMat};
use gamma0::triples::{build_optimal_polygon, build_twin_polygon, farey_triples, is_cashew, triple_count};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EQUALITY_LIST: [u64; 20] = [2, 3, 4, 5, 7, 9, 11, 13, 17, 19, 25, 29, 31, 37, 49, 53, 67, 83, 127, 173];

const CASHEW_PRIMES: [u64; 33] = [
    5, 11, 17, 23, 41, 43, 47, 59, 71, 73, 89, 97, 101, 103, 107, 137, 139, 191, 211, 229, 233, 239, 241, 269, 281, 353, 389,
    409, 419, 421, 431, 457, 499,
];

const TWINS: [(u64, u64); 6] = [(3, 5), (5, 7), (11, 13), (17, 19), (29, 31), (41, 43)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime_powers_upto(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| prime_or_square(n).is_some()).collect()
}

fn criterion_1() -> Outcome {
    let got = equality_list(1_000_000, Execution::default()).map_err(|e| e.to_string())?;
    ensure(got == EQUALITY_LIST, || format!("got {got:?}"))?;
    Ok(format!("{} levels in [2, 10^6]", got.len()))
}

fn criterion_2() -> Outcome {
    let got: Vec<u64> = (2..=500).filter(|&p| is_prime(p) && is_cashew(p)).collect();
    ensure(got == CASHEW_PRIMES, || format!("got {got:?}"))?;
    Ok(format!("{} cashew primes up to 500", got.len()))
}

fn criterion_3() -> Outcome {
    let levels = prime_powers_upto(5000);
    for &n in &levels {
        let p = build_optimal_polygon(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(p.is_maximal(), || format!("n={n}: not maximal"))?;
        ensure(p.max_denominator() <= floor_sqrt_4n_3(n), || format!("n={n}: max denominator {}", p.max_denominator()))?;
        let sys = independent_system(&p).map_err(|e| format!("n={n}: {e}"))?;
        for g in sys.generators.iter().filter(|g| g.kind != PairingKind::Translation) {
            let (tr, frob) = g.matrix.norm_stats().map_err(|e| e.to_string())?;
            let c = g.matrix.lower_left() as u128;
            let n = n as u128;
            ensure(c == n && tr + 2 <= n && frob < (2 * n - 1) * (2 * n - 1), || format!("n={n}: {}", g.matrix))?;
        }
    }
    Ok(format!("{} primes and prime squares up to 5000", levels.len()))
}

fn sigma_of(p: &LabeledPolygon) -> Vec<i64> {
    p.sigma()
}

fn criterion_4() -> Outcome {
    let fixtures: [(u64, &[u64], &[i64]); 4] = [
        (2, &[0, 1, 1], &[1, -2, 1]),
        (3, &[0, 1, 1], &[1, -3, 1]),
        (5, &[0, 1, 2, 1], &[1, -2, -2, 1]),
        (7, &[0, 1, 2, 1], &[1, -3, -3, 1]),
    ];
    for (n, dens, sigma) in fixtures {
        let p = grow_maximal(n, Strategy::Leftmost).map_err(|e| e.to_string())?;
        ensure(p.denominator_sequence() == dens && sigma_of(&p) == sigma, || format!("n={n}: {p}"))?;
        let q = LabeledPolygon::classify(n, lift_denominator_sequence(dens).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(q == p, || format!("n={n}: reclassified {q}"))?;
    }
    let p = grow_maximal(8, Strategy::Leftmost).map_err(|e| e.to_string())?;
    ensure(p.denominator_sequence() == [0, 1, 4, 3, 2, 1] && sigma_of(&p) == [1, 2, 2, 3, 3, 1], || format!("n=8 leftmost: {p}"))?;
    let p = grow_maximal(8, Strategy::Rightmost).map_err(|e| e.to_string())?;
    ensure(p.denominator_sequence() == [0, 1, 2, 3, 4, 1] && sigma_of(&p) == [1, 3, 3, 2, 2, 1], || format!("n=8 rightmost: {p}"))?;
    let f4 = farey_sequence(4).map_err(|e| e.to_string())?;
    for p in [
        grow_maximal(17, Strategy::SmallestMediant).map_err(|e| e.to_string())?,
        build_optimal_polygon(17).map_err(|e| e.to_string())?,
    ] {
        ensure(p.cusps() == f4.as_slice(), || format!("n=17: {p}"))?;
        ensure(sigma_of(&p) == [1, -2, 2, 3, 2, 3, -2, 1], || format!("n=17: {p}"))?;
        ensure(p.count_label(|l| l == SideLabel::Even) == 2, || "n=17: even sides".into())?;
        ensure(p.count_label(|l| matches!(l, SideLabel::Paired(_))) == 4, || "n=17: paired sides".into())?;
    }
    Ok("n = 2, 3, 5, 7, 8 (both strategies), 17".into())
}

fn criterion_5() -> Outcome {
    let levels = prime_powers_upto(300);
    for &n in &levels {
        let (lo, hi) = (isqrt(n), floor_sqrt_4n_3(n));
        let m = m_exact_search(n, hi).map_err(|e| format!("n={n}: {e}"))?;
        ensure(lo <= m && m <= hi, || format!("n={n}: m={m} outside [{lo}, {hi}]"))?;
        ensure((m == lo) == EQUALITY_LIST.contains(&n), || format!("n={n}: m={m}, lower {lo}"))?;
        if n >= 37 {
            ensure((m == hi) == is_cashew(n), || format!("n={n}: m={m}, upper {hi}, cashew {}", is_cashew(n)))?;
        }
    }
    Ok(format!("{} primes and prime squares up to 300", levels.len()))
}

fn criterion_6() -> Outcome {
    let sieve = Sieve::new(10_000);
    let levels = prime_powers_upto(10_000);
    for &n in &levels {
        let u = sieve.invariants(n).map_err(|e| e.to_string())?.u;
        let k = triple_count(n).map_err(|e| format!("n={n}: {e}"))? as u64;
        ensure(sieve.totient_summatory(isqrt(n)) + k == u, || format!("n={n}: Φ + k ≠ u"))?;
    }
    for (p, q) in TWINS {
        let n = p * q;
        let u = group_invariants(n).map_err(|e| e.to_string())?.u;
        let k = triple_count(n).map_err(|e| format!("n={n}: {e}"))? as u64;
        let phi = sieve.totient_summatory(isqrt(n));
        ensure(phi + k + p + 1 == u, || format!("({p},{q}): Φ={phi} k={k} u={u}"))?;
    }
    Ok(format!("{} prime powers, {} twin pairs", levels.len(), TWINS.len()))
}

fn criterion_7() -> Outcome {
    for n in 2..=2000 {
        let p = grow_maximal(n, Strategy::SmallestMediant).map_err(|e| format!("n={n}: {e}"))?;
        let sys = independent_system(&p).map_err(|e| format!("n={n}: {e}"))?;
        let inv = group_invariants(n).map_err(|e| e.to_string())?;
        let counts = (
            sys.count_order(ElementOrder::Two) as u64,
            sys.count_order(ElementOrder::Three) as u64,
            sys.count_order(ElementOrder::Infinite) as u64,
        );
        let want = (inv.v2, inv.v3, 2 * inv.genus + inv.v_inf - 1);
        ensure(counts == want, || format!("n={n}: {counts:?} vs {want:?}"))?;
    }
    Ok("n = 2..2000".into())
}

fn criterion_8() -> Outcome {
    for (p, q) in [(11u64, 13u64), (17, 19), (29, 31)] {
        let n = p * q;
        let poly = build_twin_polygon(p, q).map_err(|e| e.to_string())?;
        let sys = independent_system(&poly).map_err(|e| e.to_string())?;
        let report = verify_system(&sys, Expectation::Twin { p, q }).map_err(|e| format!("({p},{q}): {e}"))?;
        let nontrivial: Vec<&PslMat> =
            sys.generators.iter().filter(|g| g.kind != PairingKind::Translation).map(|g| &g.matrix).collect();
        let doubles = nontrivial.iter().filter(|m| m.lower_left() == 2 * n as i128).count() as u64;
        let singles = nontrivial.iter().filter(|m| m.lower_left() == n as i128).count();
        ensure(doubles == q - p && singles + doubles as usize == nontrivial.len(), || format!("({p},{q}): {report}"))?;
        for m in nontrivial {
            let c = m.lower_left() as u128;
            let (tr, frob) = m.norm_stats().map_err(|e| e.to_string())?;
            ensure(tr + 2 <= c && frob < (2 * c - 1) * (2 * c - 1), || format!("({p},{q}): {m}"))?;
        }
    }
    Ok("(11,13), (17,19), (29,31)".into())
}

fn random_pair(rng: &mut ChaCha8Rng) -> (PslMat, (ExtFrac, ExtFrac)) {
    let (s, _, t) = PslMat::constants();
    let mut g = PslMat::IDENTITY;
    for _ in 0..rng.random_range(0..12) {
        let k = rng.random_range(-4i32..=4);
        let tk = if k >= 0 { t.pow(k as u32).unwrap() } else { t.inverse().pow((-k) as u32).unwrap() };
        g = g.compose(&tk).unwrap().compose(&s).unwrap();
    }
    let pair = (g.act(&ExtFrac::INFINITY).unwrap(), g.act(&ExtFrac::ZERO).unwrap());
    (g, pair)
}

fn criterion_9() -> Outcome {
    // pairing involution
    let mut polys = Vec::new();
    for n in 2..=400 {
        polys.push(grow_maximal(n, Strategy::SmallestMediant).map_err(|e| e.to_string())?);
    }
    for n in prime_powers_upto(2000) {
        polys.push(build_optimal_polygon(n).map_err(|e| e.to_string())?);
    }
    for p in &polys {
        let sys = side_pairing_system(p).map_err(|e| e.to_string())?;
        for sp in &sys {
            let back = &sys[sp.partner];
            let ok = match sp.kind {
                PairingKind::Even => sp.matrix.pow(2).unwrap().is_identity() && sp.partner == sp.side,
                PairingKind::Odd => sp.matrix.pow(3).unwrap().is_identity() && sp.partner == sp.side,
                _ => back.partner == sp.side && back.matrix == sp.matrix.inverse(),
            };
            ensure(ok && sp.matrix.in_gamma0(p.level()), || format!("n={}: side {}", p.level(), sp.side))?;
        }
    }

    // edge transport
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (a, src) = random_pair(&mut rng);
        let (b, dst) = random_pair(&mut rng);
        let g = edge_transport(src, dst).map_err(|e| e.to_string())?;
        ensure(g.act(&src.0).unwrap() == dst.0 && g.act(&src.1).unwrap() == dst.1, || format!("{src:?} → {dst:?}"))?;
        ensure(g == b.compose(&a.inverse()).unwrap(), || format!("{src:?} → {dst:?}: {g}"))?;
    }

    // triple identity
    let mut triples = 0;
    for n in prime_powers_upto(10_000) {
        for t in farey_triples(n).map_err(|e| e.to_string())? {
            let p = t.pairs();
            for i in 0..3 {
                ensure(p[i].0 + p[i].1 == p[(i + 1) % 3].1 + p[(i + 2) % 3].0, || format!("n={n}: {t}"))?;
            }
            triples += 1;
        }
    }

    // no identifications inside hull(F_v*)
    for n in 2..=2000u64 {
        let v = isqrt(n);
        let edges: Vec<(u64, u64)> = (1..=v)
            .flat_map(|a| (1..=v).map(move |b| (a, b)))
            .filter(|&(a, b)| gcd(a, b) == 1)
            .collect();
        let inner: BTreeSet<(u64, u64)> = edges.iter().copied().filter(|&(x, y)| x + y <= v).collect();
        for &side in &inner {
            ensure(classify_side(n, side, &edges) == SideClass::Free, || format!("n={n}: {side:?} identified"))?;
        }
    }
    Ok(format!("{} polygons, 10^4 transports, {triples} triples, n ≤ 2000 hulls", polys.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 equality list", criterion_1),
        ("2 cashew primes", criterion_2),
        ("3 optimal construction", criterion_3),
        ("4 fixtures", criterion_4),
        ("5 exact m", criterion_5),
        ("6 counting identities", criterion_6),
        ("7 free-factor counts", criterion_7),
        ("8 twin generators", criterion_8),
        ("9 property suites", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
