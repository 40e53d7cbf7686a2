// SPDX-License-Identifier: Apache-2.0

//! Batch front end: `validate`, `rank`, `count` and `sieve` on a JSON surface file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use crate::count::{
    dyadic_blocks, euler_product, euler_product_by_factor, fiber_bound_constant, filter_stats, fmt_float,
    oracle_count_with_budget, parse_grid, render_rational, sum_s, torsor_count_with_budget, CountReport, EulerProduct,
    GrowthRow, DEFAULT_BUDGET, DEFAULT_ORACLE_BUDGET, ENGINE_VERSION,
};
use crate::error::Error;
use crate::quadfield::ProbeVerdict;
use crate::surface::{ChateletSurface, Hypothesis, SurfaceSpec};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CHATELET_THREADS";

/// Longest exact rational printed in full.
const MAX_RATIONAL_DIGITS: usize = 2000;

pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const HYPOTHESIS: u8 = 3;
    pub const REGIME: u8 = 4;
    pub const BUDGET: u8 = 5;
    pub const OVERFLOW: u8 = 6;
    pub const ORACLE_MISMATCH: u8 = 7;
    pub const FAILURE: u8 = 8;
}

#[derive(Debug, Parser)]
#[command(name = "chatelet", version, about = "Exact arithmetic on surfaces y^2 - a z^2 = f(x)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the surface hypotheses.
    Validate { spec: PathBuf },
    /// Picard rank with the factorization of f and per-factor verdicts.
    Rank { spec: PathBuf },
    /// Exact point counts N(B) = T(B) / 4.
    Count(CountArgs),
    /// Sieve quantities: S(U, V), E_f(U), filter statistics and fiber bounds.
    Sieve(SieveArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub spec: PathBuf,
    /// Single height bound, e.g. 4096 or 2^12.
    #[arg(long = "B", value_name = "N", value_parser = parse_bound, conflicts_with = "grid", required_unless_present = "grid")]
    pub bound: Option<u64>,
    /// Increasing grid: "16,32,64" or "2^4..2^12".
    #[arg(long)]
    pub grid: Option<String>,
    /// Also run the P⁴ oracle on every bound and require equality.
    #[arg(long)]
    pub oracle: bool,
    /// Write the CSV table here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the JSON mirror here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Cap on the work estimate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["sum", "euler", "filter_stats", "fiber_bound", "dyadic"])))]
pub struct SieveArgs {
    pub spec: PathBuf,
    /// S(U, V).
    #[arg(long, num_args = 2, value_names = ["U", "V"], value_parser = parse_bound)]
    pub sum: Option<Vec<u64>>,
    /// E_f(U), also per irreducible factor.
    #[arg(long, value_name = "U", value_parser = parse_bound)]
    pub euler: Option<u64>,
    /// Fractions of restricted fibers killed by ϑ = 0 and by local obstructions.
    #[arg(long, value_name = "B", value_parser = parse_bound)]
    pub filter_stats: Option<u64>,
    /// Largest normalized per-fiber count over the restricted fibers.
    #[arg(long, value_name = "B", value_parser = parse_bound)]
    pub fiber_bound: Option<u64>,
    /// Restricted sums per dyadic block.
    #[arg(long, value_name = "B", value_parser = parse_bound)]
    pub dyadic: Option<u64>,
}

/// Accepts `123`, `2^12` and `10^9`.
pub fn parse_bound(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.split_once('^') {
        Some((b, e)) => {
            let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
            let e: u32 = e.trim().parse().map_err(|e| format!("{e}"))?;
            b.checked_pow(e).ok_or_else(|| format!("{s} exceeds 64 bits"))?
        }
        None => s.parse().map_err(|e| format!("{e}"))?,
    };
    Ok(parsed)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Engine(#[from] Error),
    /// A hypothesis failure with the validation report that found it.
    #[error("{source}")]
    Rejected { report: String, source: Error },
    #[error("oracle mismatch at B = {bound}: torsor count gives N = {torsor}, oracle gives {oracle}")]
    OracleMismatch { bound: u64, torsor: u64, oracle: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Parse { .. } => exit::PARSE,
            CliError::OracleMismatch { .. } => exit::ORACLE_MISMATCH,
            CliError::Engine(e) | CliError::Rejected { source: e, .. } => match e {
                Error::Hypothesis(_) => exit::HYPOTHESIS,
                Error::UnsupportedRegime(_) => exit::REGIME,
                Error::BudgetExceeded { .. } => exit::BUDGET,
                Error::Overflow(_) => exit::OVERFLOW,
                Error::InvalidInput(_) => exit::PARSE,
                _ => exit::FAILURE,
            },
        }
    }
}

pub fn read_spec(path: &Path) -> Result<SurfaceSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn load(path: &Path) -> Result<ChateletSurface, CliError> {
    Ok(ChateletSurface::from_spec(&read_spec(path)?)?)
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Runs a parsed command, returning what goes to stdout.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Validate { spec } => validate(spec),
        Command::Rank { spec } => rank(spec),
        Command::Count(args) => count(args),
        Command::Sieve(args) => sieve(args),
    }
}

fn validate(path: &Path) -> Result<String, CliError> {
    let spec = read_spec(path)?;
    let mut out = String::new();
    let (verdict, err) = match ChateletSurface::from_spec(&spec) {
        Ok(s) => {
            writeln!(out, "surface  {s}").unwrap();
            writeln!(out, "a        {} (nonzero, not a square): pass", s.a()).unwrap();
            writeln!(out, "degree   {}: pass", s.degree()).unwrap();
            writeln!(out, "disc f   {}: pass", s.discriminant()).unwrap();
            writeln!(out, "counting {}", if s.a() < 0 { "supported (a < 0)" } else { "unsupported (a > 0)" }).unwrap();
            ("valid", None)
        }
        Err(Error::Hypothesis(h)) => {
            writeln!(out, "a        {}", spec.a).unwrap();
            writeln!(out, "f        {:?}", spec.f).unwrap();
            writeln!(out, "{}: fail", describe(&h)).unwrap();
            ("rejected", Some(Error::Hypothesis(h)))
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "{verdict}").unwrap();
    match err {
        Some(source) => Err(CliError::Rejected { report: out, source }),
        None => Ok(out),
    }
}

fn describe(h: &Hypothesis) -> String {
    match h {
        Hypothesis::ZeroA => "a is zero".into(),
        Hypothesis::SquareA(a) => format!("a = {a} is a square"),
        Hypothesis::Degree(d) => format!("degree {d:?} not in {{3, 4}}"),
        Hypothesis::RepeatedRoot => "f has a repeated root (disc f = 0)".into(),
    }
}

fn rank(path: &Path) -> Result<String, CliError> {
    let s = load(path)?;
    let mut out = String::new();
    writeln!(out, "surface {s}").unwrap();
    writeln!(out, "rho {}", s.picard_rank()).unwrap();
    writeln!(out, "factor\tmultiplicity\tsqrt_a_in_field\tprobe").unwrap();
    for v in s.rank_breakdown()? {
        let probe = match v.probe {
            ProbeVerdict::CertifiedNonmember { witness } => format!("nonmember (p = {witness})"),
            ProbeVerdict::ConsistentWithMember => "consistent with member".into(),
        };
        writeln!(out, "{}\t{}\t{}\t{}", v.factor, v.multiplicity, v.contains_sqrt_a, probe).unwrap();
    }
    Ok(out)
}

fn count(args: &CountArgs) -> Result<String, CliError> {
    let s = load(&args.spec)?;
    let grid = match (&args.bound, &args.grid) {
        (Some(b), _) => vec![*b],
        (None, Some(g)) => parse_grid(g)?,
        (None, None) => unreachable!("clap requires one of --B and --grid"),
    };
    if grid[0] < 2 {
        // B = 1 is below the report's grid range; count directly
        return count_small(&s, &grid, args);
    }
    eprintln!("counting {s} on {} bound(s) up to {}", grid.len(), grid.last().unwrap());
    let report = CountReport::compute(&s, &grid, args.budget)?;
    if args.oracle {
        for row in &report.rows {
            check_oracle(&s, row.bound, row.rational)?;
        }
    }
    emit(&report, args)
}

fn count_small(s: &ChateletSurface, grid: &[u64], args: &CountArgs) -> Result<String, CliError> {
    let mut report = CountReport {
        surface: s.spec(),
        rho: s.picard_rank(),
        norm: "sup".into(),
        engine_version: ENGINE_VERSION.into(),
        rows: Vec::new(),
    };
    for &b in grid {
        let c = torsor_count_with_budget(s, b, args.budget)?;
        if args.oracle {
            check_oracle(s, b, c.rational)?;
        }
        let ratio = if b >= 2 {
            c.rational as f64 / (b as f64 * (b as f64).ln().powi(s.picard_rank() as i32 - 1))
        } else {
            f64::NAN
        };
        report.rows.push(GrowthRow { bound: b, rational: c.rational, torsor: c.torsor, ratio, beta_secant: None });
    }
    emit(&report, args)
}

fn check_oracle(s: &ChateletSurface, bound: u64, torsor: u64) -> Result<(), CliError> {
    eprintln!("oracle at B = {bound}");
    let oracle = oracle_count_with_budget(s, bound, DEFAULT_ORACLE_BUDGET)?;
    if oracle != torsor {
        return Err(CliError::OracleMismatch { bound, torsor, oracle });
    }
    Ok(())
}

fn emit(report: &CountReport, args: &CountArgs) -> Result<String, CliError> {
    if let Some(p) = &args.json {
        write_out(p, &report.to_json())?;
    }
    let csv = report.to_csv();
    match &args.csv {
        Some(p) => {
            write_out(p, &csv)?;
            Ok(report.rows.iter().map(|r| format!("B={} N={} T={}\n", r.bound, r.rational, r.torsor)).collect())
        }
        None => Ok(csv),
    }
}

fn sieve(args: &SieveArgs) -> Result<String, CliError> {
    let s = load(&args.spec)?;
    let mut out = String::new();
    if let Some(uv) = &args.sum {
        let (u, v) = (uv[0], uv[1]);
        writeln!(out, "S({u},{v}) = {}", sum_s(&s, u, v)?).unwrap();
    } else if let Some(u) = args.euler {
        write_euler(&mut out, "f", &euler_product(s.f(), s.a(), u)?);
        if s.factorization().factors.len() > 1 {
            for (g, e) in euler_product_by_factor(&s, u)? {
                write_euler(&mut out, &g.to_string(), &e);
            }
        }
    } else if let Some(b) = args.filter_stats {
        let st = filter_stats(&s, b)?;
        writeln!(out, "B {b}").unwrap();
        writeln!(out, "fibers {}", st.fibers).unwrap();
        writeln!(out, "theta_zero {} ({})", st.theta_zero, fmt_float(st.theta_zero_fraction())).unwrap();
        writeln!(out, "locally_unsolvable {} ({})", st.locally_unsolvable, fmt_float(st.unsolvable_fraction()))
            .unwrap();
        writeln!(out, "theta_zero_subset_of_unsolvable {}", st.inclusion_violations == 0).unwrap();
    } else if let Some(b) = args.fiber_bound {
        let st = fiber_bound_constant(&s, b)?;
        let arg = st.argmax.map_or("-".into(), |(u, v)| format!("({u},{v})"));
        writeln!(out, "B {b}\nmax_ratio {}\nargmax {arg}", fmt_float(st.max_ratio)).unwrap();
    } else if let Some(b) = args.dyadic {
        writeln!(out, "i,j,block_sum,s_bound").unwrap();
        for blk in dyadic_blocks(&s, b)? {
            writeln!(out, "{},{},{},{}", blk.i, blk.j, fmt_float(blk.block_sum), fmt_float(blk.s_bound)).unwrap();
        }
    }
    Ok(out)
}

fn write_euler(out: &mut String, name: &str, e: &EulerProduct) {
    let exact = e.exact();
    let dec = exact.to_f64().unwrap_or_else(|| e.to_f64());
    writeln!(out, "E[{name}]({}) = {} ~ {}", e.bound, render_rational(&exact, MAX_RATIONAL_DIGITS), fmt_float(dec))
        .unwrap();
}

fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::from(exit::OK)
        }
        Err(e) => {
            if let CliError::Rejected { report, .. } = &e {
                print!("{report}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("2^12"), Ok(4096));
        assert_eq!(parse_bound("10^9"), Ok(1_000_000_000));
        assert_eq!(parse_bound("17"), Ok(17));
        assert!(parse_bound("2^64").is_err());
        assert!(parse_bound("x").is_err());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let errs = [
            CliError::Engine(Error::Hypothesis(Hypothesis::ZeroA)).exit_code(),
            CliError::Engine(Error::UnsupportedRegime(2)).exit_code(),
            CliError::Engine(Error::BudgetExceeded { estimate: 2, budget: 1 }).exit_code(),
            CliError::Engine(Error::Overflow("x")).exit_code(),
            CliError::OracleMismatch { bound: 1, torsor: 1, oracle: 2 }.exit_code(),
            exit::PARSE,
        ];
        let mut sorted = errs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), errs.len());
    }
}
