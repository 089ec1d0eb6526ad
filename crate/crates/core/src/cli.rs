//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or computation fails,
//! 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::{prime_or_square, twin_pair};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gens::{independent_system, verify_system, Expectation};
use crate::invariants::{group_invariants, m_bounds, m_exact_search};
use crate::polygon::{grow_maximal, LabeledPolygon, Strategy};
use crate::sweep::{run_sweep, write_csv, write_json, Filter, SweepConfig};
use crate::triples::{build_optimal_polygon, build_twin_polygon, cashew_certificate, cashew_certificates, farey_triples, TripleReport};

#[derive(Parser, Debug)]
#[command(name = "gamma0", version, about = "Special polygons and independent generators for Γ0(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Optimal polygon for primes and prime squares, twin polygon for close
    /// pq, smallest-mediant growth otherwise.
    Auto,
    Leftmost,
    Rightmost,
    SmallestMediant,
    Optimal,
    Twin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    Primes,
    PrimeSquares,
    TwinPq,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index, cusp and cone-point counts, genus and triangle count.
    Invariants {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build a maximal polygon.
    Polygon {
        n: u64,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: Construction,
        #[arg(long)]
        json: bool,
        /// Write an SVG picture to this path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Independent generators read off a maximal polygon.
    Generators {
        n: u64,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: Construction,
        /// Check membership, torsion, factor counts and size bounds.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lower and upper bounds on the largest cusp denominator.
    Bounds {
        n: u64,
        /// Also run the exact search.
        #[arg(long)]
        exact: bool,
        /// Largest bound tried by the exact search.
        #[arg(long, value_name = "B")]
        max_bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// The n-Farey triples among the free sides of hull(F_v*).
    Triples { n: u64 },
    /// Certificate that ⌊√(4n/3)⌋ is attained.
    Cashew {
        n: u64,
        #[arg(long)]
        all_certificates: bool,
    },
    /// One report row per level in A..=B.
    Sweep {
        a: u64,
        b: u64,
        #[arg(long = "filter", value_enum, default_values = ["all"])]
        filters: Vec<FilterArg>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Run the exact search up to this bound for every level.
        #[arg(long, value_name = "B")]
        exact_budget: Option<u64>,
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn build(n: u64, how: Construction) -> Result<(LabeledPolygon, Expectation)> {
    let generic = |s| Ok((grow_maximal(n, s)?, Expectation::Generic));
    match how {
        Construction::Leftmost => generic(Strategy::Leftmost),
        Construction::Rightmost => generic(Strategy::Rightmost),
        Construction::SmallestMediant => generic(Strategy::SmallestMediant),
        Construction::Optimal => Ok((build_optimal_polygon(n)?, Expectation::Optimal)),
        Construction::Twin => {
            let (p, q) = twin_pair(n).ok_or_else(|| Error::pre(format!("{n} is not a product of close odd primes")))?;
            Ok((build_twin_polygon(p, q)?, Expectation::Twin { p, q }))
        }
        Construction::Auto => {
            if prime_or_square(n).is_some() && n >= 2 {
                build(n, Construction::Optimal)
            } else if twin_pair(n).is_some() {
                build(n, Construction::Twin)
            } else {
                generic(Strategy::SmallestMediant)
            }
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Invariants { n, json } => {
            let g = group_invariants(n)?;
            if json {
                writeln!(out, "{}", to_json(&g))?;
            } else {
                writeln!(
                    out,
                    "n={n} index={} v_inf={} v2={} v3={} genus={} u={}",
                    g.index, g.v_inf, g.v2, g.v3, g.genus, g.u
                )?;
            }
        }
        Command::Polygon { n, strategy, json, svg } => {
            let (p, _) = build(n, strategy)?;
            if let Some(path) = svg {
                crate::svg::write_svg(&p, &path)?;
            }
            if json {
                writeln!(out, "{}", to_json(&p))?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Command::Generators { n, strategy, verify, json } => {
            let (p, expect) = build(n, strategy)?;
            let sys = independent_system(&p)?;
            if json {
                writeln!(out, "{}", to_json(&sys))?;
            } else {
                for g in &sys.generators {
                    let order = g.order.as_number().map_or("infinite".to_string(), |k| k.to_string());
                    writeln!(out, "{} {:?} order={order}", g.matrix, g.kind)?;
                }
            }
            if verify {
                match verify_system(&sys, expect) {
                    Ok(report) => writeln!(out, "verified: {report}")?,
                    Err(e @ Error::Verification(_)) => return Err(Failure::Run(e.to_string())),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Command::Bounds { n, exact, max_bound, json } => {
            let b = m_bounds(n)?;
            let m = if exact {
                let cap = match (max_bound, b.upper) {
                    (Some(cap), _) => cap,
                    (None, Some(up)) => up,
                    (None, None) => grow_maximal(n, Strategy::SmallestMediant)?.max_denominator(),
                };
                Some(m_exact_search(n, cap)?)
            } else {
                None
            };
            if json {
                let v = json!({"lower": b.lower, "lower_is_exact": b.lower_is_exact, "upper": b.upper, "exact": m});
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "lower {}", b.lower)?;
                writeln!(out, "lower_is_exact {}", b.lower_is_exact)?;
                match b.upper {
                    Some(u) => writeln!(out, "upper {u}")?,
                    None => writeln!(out, "upper n/a")?,
                }
                if let Some(m) = m {
                    writeln!(out, "exact {m}")?;
                }
            }
        }
        Command::Triples { n } => {
            let report = TripleReport { n, triples: farey_triples(n)? };
            writeln!(out, "{}", to_json(&report))?;
        }
        Command::Cashew { n, all_certificates } => {
            if all_certificates {
                writeln!(out, "{}", to_json(&cashew_certificates(n)))?;
            } else {
                match cashew_certificate(n) {
                    Some(c) => writeln!(out, "{}", to_json(&c))?,
                    None => writeln!(out, "none")?,
                }
            }
        }
        Command::Sweep { a, b, filters, format, output, exact_budget, sequential } => {
            let cfg = SweepConfig {
                start: a,
                end: b,
                filters: filters
                    .into_iter()
                    .map(|f| match f {
                        FilterArg::All => Filter::All,
                        FilterArg::Primes => Filter::Primes,
                        FilterArg::PrimeSquares => Filter::PrimeSquares,
                        FilterArg::TwinPq => Filter::TwinPq,
                    })
                    .collect(),
                exact_budget,
                exec: if sequential { Execution::Sequential } else { Execution::default() },
            };
            let rows = run_sweep(&cfg)?;
            let mut sink: Box<dyn Write + '_> = match output {
                Some(path) => Box::new(File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?),
                None => Box::new(&mut *out),
            };
            match format {
                Format::Csv => write_csv(&rows, &mut sink)?,
                Format::Json => write_json(&rows, &mut sink)?,
            }
        }
    }
    Ok(())
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Run(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

pub fn run_from_env() -> i32 {
    if let Err(e) = exec::init_thread_pool() {
        eprintln!("error: {e}");
        return 2;
    }
    let stdout = io::stdout();
    let stderr = io::stderr();
    dispatch(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
