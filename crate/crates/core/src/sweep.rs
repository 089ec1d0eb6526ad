//! Range sweeps over levels `n`, one report row per level.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{isqrt, prime_or_square, twin_pair};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::invariants::{m_bounds_with, m_exact_search, Sieve};
use crate::triples::{is_cashew, triple_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    All,
    Primes,
    PrimeSquares,
    TwinPq,
}

impl Filter {
    pub fn accepts(self, n: u64) -> bool {
        match self {
            Filter::All => true,
            Filter::Primes => crate::arith::is_prime(n),
            Filter::PrimeSquares => prime_or_square(n).is_some_and(|p| p != n),
            Filter::TwinPq => twin_pair(n).is_some(),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "primes" => Ok(Filter::Primes),
            "prime-squares" => Ok(Filter::PrimeSquares),
            "twin-pq" => Ok(Filter::TwinPq),
            _ => Err(Error::Parse(format!("unknown filter {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub start: u64,
    pub end: u64,
    pub filters: Vec<Filter>,
    /// Largest bound tried by the exact search; `None` skips it.
    pub exact_budget: Option<u64>,
    pub exec: Execution,
}

impl SweepConfig {
    pub fn new(start: u64, end: u64) -> Self {
        SweepConfig {
            start,
            end,
            filters: vec![Filter::All],
            exact_budget: None,
            exec: Execution::default(),
        }
    }

    fn accepts(&self, n: u64) -> bool {
        self.filters.is_empty() || self.filters.iter().any(|f| f.accepts(n))
    }
}

/// One level. `k`, `upper` and `cashew` are only filled in where they are
/// defined: primes, prime squares and close `pq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct SweepRow {
    pub n: u64,
    pub index: Option<u64>,
    pub v_inf: Option<u64>,
    pub v2: Option<u64>,
    pub v3: Option<u64>,
    pub genus: Option<u64>,
    pub u: Option<u64>,
    pub phi_floor_sqrt: Option<u64>,
    pub k: Option<u64>,
    pub lower: Option<u64>,
    pub lower_is_exact: Option<bool>,
    pub upper: Option<u64>,
    pub m_exact: Option<u64>,
    pub cashew: Option<bool>,
    pub error: Option<String>,
}

fn row(sieve: &Sieve, n: u64, budget: Option<u64>) -> Result<SweepRow> {
    let inv = sieve.invariants(n)?;
    let bounds = m_bounds_with(sieve, n, &inv);
    let special = prime_or_square(n).is_some() || twin_pair(n).is_some();
    let k = if special { Some(triple_count(n)? as u64) } else { None };
    let m_exact = match budget {
        Some(b) => Some(m_exact_search(n, b.max(bounds.lower))?),
        None => None,
    };
    Ok(SweepRow {
        n,
        index: Some(inv.index),
        v_inf: Some(inv.v_inf),
        v2: Some(inv.v2),
        v3: Some(inv.v3),
        genus: Some(inv.genus),
        u: Some(inv.u),
        phi_floor_sqrt: Some(sieve.totient_summatory(isqrt(n))),
        k,
        lower: Some(bounds.lower),
        lower_is_exact: Some(bounds.lower_is_exact),
        upper: bounds.upper,
        m_exact,
        cashew: prime_or_square(n).map(|_| is_cashew(n)),
        error: None,
    })
}

/// Rows for every accepted level in `start..=end`, sorted by `n`. A level
/// that fails (overflow, exhausted search) yields a row carrying only the
/// error message.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.start < 2 || cfg.start > cfg.end {
        return Err(Error::pre(format!("invalid range {}..={}", cfg.start, cfg.end)));
    }
    let sieve = Sieve::new(cfg.end);
    let levels = exec::filter_range(cfg.exec, cfg.start, cfg.end, |n| cfg.accepts(n));
    Ok(exec::map(cfg.exec, &levels, |&n| {
        row(&sieve, n, cfg.exact_budget).unwrap_or_else(|e| SweepRow {
            n,
            error: Some(e.to_string()),
            ..SweepRow::default()
        })
    }))
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    serde_json::to_writer(&mut out, rows).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out).map_err(|e| Error::Io(e.to_string()))
}
