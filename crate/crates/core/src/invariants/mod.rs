//! Closed-form invariants of Γ0(n) and the bounds on `m(Γ0(n))`.

mod search;

pub use search::{m_exact_search, TriangleOrbits};

use serde::Serialize;

use crate::arith::{factorize, floor_sqrt_4n_3, isqrt, prime_or_square, twin_pair};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupInvariants {
    pub index: u64,
    pub v_inf: u64,
    pub v2: u64,
    pub v3: u64,
    pub genus: u64,
    /// Number of ideal triangles in a maximal polygon.
    pub u: u64,
}

fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn phi_prime_power(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        pow(p, e - 1) * (p - 1)
    }
}

/// Invariants from a factorization `n = ∏ p^e`.
pub fn invariants_from_factors(n: u64, factors: &[(u64, u32)]) -> Result<GroupInvariants> {
    if n < 2 {
        return Err(Error::pre("level must be at least 2"));
    }
    let mut index = 1u64;
    let mut v_inf = 1u64;
    let mut v2 = 1u64;
    let mut v3 = 1u64;
    for &(p, e) in factors {
        index = index.checked_mul(pow(p, e - 1) * (p + 1)).ok_or(Error::Overflow)?;
        v_inf *= (0..=e).map(|i| phi_prime_power(p, i.min(e - i))).sum::<u64>();
        v2 *= match (p, e) {
            (2, 1) => 1,
            (2, _) => 0,
            _ if p % 4 == 1 => 2,
            _ => 0,
        };
        v3 *= match (p, e) {
            (3, 1) => 1,
            (3, _) => 0,
            _ if p % 3 == 1 => 2,
            _ => 0,
        };
    }
    let twelve_g = (index + 12) as i128 - 6 * v_inf as i128 - 4 * v3 as i128 - 3 * v2 as i128;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(Error::Inconsistent(format!("level {n}: 12g = {twelve_g}")));
    }
    if !(index - v3).is_multiple_of(3) {
        return Err(Error::Inconsistent(format!("level {n}: index − v3 not divisible by 3")));
    }
    Ok(GroupInvariants {
        index,
        v_inf,
        v2,
        v3,
        genus: (twelve_g / 12) as u64,
        u: (index - v3) / 3,
    })
}

pub fn group_invariants(n: u64) -> Result<GroupInvariants> {
    invariants_from_factors(n, &factorize(n))
}

/// Smallest-prime-factor and totient tables up to a limit.
pub struct Sieve {
    spf: Vec<u32>,
    phi_sum: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes = Vec::new();
        let mut phi = vec![0u64; len];
        if len > 1 {
            phi[1] = 1;
        }
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                phi[i] = i as u64 - 1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip >= len {
                    break;
                }
                spf[ip] = p;
                phi[ip] = if p == spf[i] { phi[i] * p as u64 } else { phi[i] * (p as u64 - 1) };
            }
        }
        let mut phi_sum = phi;
        for i in 1..len {
            phi_sum[i] += phi_sum[i - 1];
        }
        Sieve { spf, phi_sum }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n <= self.limit(), "{n} beyond sieve limit");
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p;
        }
        out
    }

    pub fn invariants(&self, n: u64) -> Result<GroupInvariants> {
        invariants_from_factors(n, &self.factorize(n))
    }

    /// `Φ(k) = φ(1) + … + φ(k)`.
    pub fn totient_summatory(&self, k: u64) -> u64 {
        self.phi_sum[k as usize]
    }
}

/// `Φ(k)`, the number of Farey fractions of order `k` in `(0, 1]`.
pub fn totient_summatory(k: u64) -> u64 {
    Sieve::new(k).totient_summatory(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MBounds {
    pub lower: u64,
    pub lower_is_exact: bool,
    pub upper: Option<u64>,
}

fn upper_bound(n: u64) -> Option<u64> {
    if prime_or_square(n).is_some() {
        Some(floor_sqrt_4n_3(n))
    } else {
        twin_pair(n).map(|(_, q)| floor_sqrt_4n_3(n).max(q))
    }
}

pub fn m_bounds(n: u64) -> Result<MBounds> {
    let inv = group_invariants(n)?;
    let lower = isqrt(n);
    Ok(MBounds {
        lower,
        lower_is_exact: inv.u == totient_summatory(lower),
        upper: upper_bound(n),
    })
}

pub(crate) fn m_bounds_with(sieve: &Sieve, n: u64, inv: &GroupInvariants) -> MBounds {
    let lower = isqrt(n);
    MBounds {
        lower,
        lower_is_exact: inv.u == sieve.totient_summatory(lower),
        upper: upper_bound(n),
    }
}

/// All `n ≤ limit` with `u(n) = Φ(⌊√n⌋)`, i.e. where `hull(F_v*)` is
/// already maximal.
pub fn equality_list(limit: u64, exec: Execution) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::pre("limit must be at least 2"));
    }
    let sieve = Sieve::new(limit);
    let hits = exec::map_range(exec, 2, limit, |n| {
        sieve
            .invariants(n)
            .map(|inv| inv.u == sieve.totient_summatory(isqrt(n)))
    });
    let mut out = Vec::new();
    for (n, hit) in (2..=limit).zip(hits) {
        if hit? {
            out.push(n);
        }
    }
    Ok(out)
}
