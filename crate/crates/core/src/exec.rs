//! Data-parallel helpers for sweeps over `n`.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool; without it, or with [`Execution::Sequential`], everything runs on
//! the calling thread. Results always come back in input order.

use std::str::FromStr;

use crate::error::{Error, Result};

/// Environment variable read by [`init_thread_pool`].
pub const THREADS_ENV: &str = "GAMMA0_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl FromStr for Execution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" | "seq" => Ok(Execution::Sequential),
            "parallel" | "par" => Ok(Execution::Parallel),
            _ => Err(Error::Parse(format!("unknown execution mode {s:?}"))),
        }
    }
}

/// Map `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Map `f` over `lo..=hi`, preserving order.
pub fn map_range<R, F>(exec: Execution, lo: u64, hi: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    if lo > hi {
        return Vec::new();
    }
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (lo..=hi).into_par_iter().map(f).collect()
        }
        _ => (lo..=hi).map(f).collect(),
    }
}

/// Keep the `n` in `lo..=hi` satisfying `pred`, in increasing order.
pub fn filter_range<F>(exec: Execution, lo: u64, hi: u64, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    if lo > hi {
        return Vec::new();
    }
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (lo..=hi).into_par_iter().filter(|&n| pred(n)).collect()
        }
        _ => (lo..=hi).filter(|&n| pred(n)).collect(),
    }
}

/// Size the global pool from `GAMMA0_THREADS`, if set. Calling this more
/// than once, or after the pool is already running, is harmless.
pub fn init_thread_pool() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}
