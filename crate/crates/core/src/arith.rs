//! Small exact-integer helpers shared by the other modules.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `Some(0)`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `⌊√n⌋`, exact.
pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// `⌊√(4n/3)⌋`, i.e. the largest `a` with `3a² ≤ 4n`.
pub fn floor_sqrt_4n_3(n: u64) -> u64 {
    isqrt(4 * n / 3)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(p)` when `n` is a prime or the square of a prime `p`.
pub fn prime_or_square(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, 1)] | [(p, 2)] => Some(*p),
        _ => None,
    }
}

/// `Some((p, q))` when `n = pq` for odd primes `p < q` with `√q − √p < √2`.
pub fn twin_pair(n: u64) -> Option<(u64, u64)> {
    match factorize(n).as_slice() {
        [(p, 1), (q, 1)] if *p > 2 && close_primes(*p, *q) => Some((*p, *q)),
        _ => None,
    }
}

/// `√p < √q < √p + √2`, decided in integers.
pub fn close_primes(p: u64, q: u64) -> bool {
    if q <= p {
        return false;
    }
    // √q < √p + √2  <=>  q − p − 2 < 2√(2p)
    match (q - p).checked_sub(2) {
        None | Some(0) => true,
        Some(d) => d * d < 8 * p,
    }
}

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `a·b + c·d` with overflow detection.
pub(crate) fn dot(a: i128, b: i128, c: i128, d: i128) -> Result<i128> {
    add(mul(a, b)?, mul(c, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), 4294967295);
        assert_eq!(floor_sqrt_4n_3(41), 7);
        assert_eq!(floor_sqrt_4n_3(17), 4);
        assert_eq!(floor_sqrt_4n_3(3), 2);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 4), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 1), Some(0));
        for a in 1..17 {
            assert_eq!(inv_mod(a, 17).unwrap() * a % 17, 1);
        }
    }

    #[test]
    fn twin_detection() {
        assert_eq!(twin_pair(143), Some((11, 13)));
        assert_eq!(twin_pair(15), Some((3, 5)));
        assert_eq!(twin_pair(3 * 11), None);
        assert_eq!(twin_pair(2 * 3), None);
        assert_eq!(prime_or_square(49), Some(7));
        assert_eq!(prime_or_square(8), None);
    }
}
