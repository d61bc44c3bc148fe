mod cache;
mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use weyl_core::formulas::AlgebraPresentation;
use weyl_core::parking::{CapacityVector, DEFAULT_BUDGET};
use weyl_core::partitions::Partition;
use weyl_core::verify::Suite;
use weyl_core::Error;

use render::Format;

/// Weight multiplicities of multi-variable Weyl modules for gl_r, computed
/// exactly and cross-checked between closed formulas, parking-function
/// enumeration, character recurrences and diagonal coinvariants.
#[derive(Parser, Debug)]
#[command(name = "weylmod", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Cache rendered results in this directory.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// Cap on enumerated candidates or materialized monomials.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Report wall times (disables the cache).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of W^A(ξ) by one or more methods.
    Dims(ModuleArgs),
    /// Weight table of W^A(ξ) by one or more methods.
    Weights(ModuleArgs),
    /// Frobenius characteristic of the parking-function representation.
    Char(CharArgs),
    /// Count or list generalized parking functions.
    Parking(ParkingArgs),
    /// Graded dimensions of the diagonal coinvariants DH_n(A).
    Oracle(OracleArgs),
    /// Fit weight multiplicities as a polynomial in the highest weight.
    Polyfit(PolyfitArgs),
    /// Run the cross-validation suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct AlgebraArgs {
    /// A = C[x^1, ..., x^d].
    #[arg(long)]
    d: Option<u32>,
    /// A as `poly:D`, `double-point` or `xline:L`.
    #[arg(long)]
    algebra: Option<AlgebraPresentation>,
    /// A = C[x, y]/(x^l).
    #[arg(long)]
    l: Option<u32>,
}

impl AlgebraArgs {
    fn get(&self) -> Result<AlgebraPresentation, Error> {
        match (self.d, self.algebra, self.l) {
            (Some(d), _, _) => Ok(AlgebraPresentation::Polynomial(d)),
            (_, Some(a), _) => Ok(a),
            (_, _, Some(l)) => AlgebraPresentation::XlLine(l).validate(),
            _ => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct ShapeArgs {
    /// Highest weight ξ = (n).
    #[arg(long)]
    n: Option<u32>,
    /// Highest weight as a partition `a,b,c`.
    #[arg(long, value_parser = parse_partition)]
    xi: Option<Partition>,
}

impl ShapeArgs {
    fn get(&self) -> Partition {
        match (&self.n, &self.xi) {
            (Some(n), _) => Partition::row(*n),
            (_, Some(xi)) => xi.clone(),
            _ => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ModuleArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Rank of gl_r.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[command(flatten)]
    shape: ShapeArgs,
    /// Comma-separated methods: formula, enumerate, recurrence, oracle.
    #[arg(long, value_delimiter = ',', default_value = "formula")]
    method: Vec<String>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct CapacityArgs {
    /// Lot capacities `m_1,...,m_N`.
    #[arg(long, value_parser = parse_capacity)]
    m: Option<CapacityVector>,
    /// Capacities given as a partition.
    #[arg(long, value_parser = parse_partition)]
    xi: Option<Partition>,
}

impl CapacityArgs {
    fn get(&self) -> Result<CapacityVector, Error> {
        match (&self.m, &self.xi) {
            (Some(m), _) => Ok(m.clone()),
            (_, Some(xi)) => CapacityVector::from_partition(xi),
            _ => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct CharArgs {
    #[command(flatten)]
    capacity: CapacityArgs,
    /// Tensor with the sign representation.
    #[arg(long)]
    sign_twist: bool,
    /// Keep only the truncated family PF^(l).
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Args, Debug, Clone)]
struct ParkingArgs {
    #[command(flatten)]
    capacity: CapacityArgs,
    /// Keep only the truncated family PF^(l).
    #[arg(long)]
    l: Option<u32>,
    /// Print every function, one per line.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Number of tensor factors.
    #[arg(long)]
    n: u32,
    /// Also report dimensions by multidegree.
    #[arg(long)]
    multigraded: bool,
    /// Consecutive zero degrees required before stopping.
    #[arg(long)]
    stall: Option<u32>,
    /// Highest total degree examined.
    #[arg(long)]
    cap: Option<u32>,
    /// Report the trace of every conjugacy class.
    #[arg(long)]
    traces: bool,
    /// Also derive the weight table of W^A(n) for gl_r.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct ModelArgs {
    /// Model W^d for C[x^1, ..., x^d].
    #[arg(long)]
    d: Option<u32>,
    /// Model C[x, y]/(x^l).
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Args, Debug, Clone)]
struct PolyfitArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Weight offset μ in simple roots, `a,b`.
    #[arg(long, visible_alias = "k", value_delimiter = ',', required = true)]
    mu: Vec<u32>,
    /// Grid of each λ_i, `lo..hi` inclusive.
    #[arg(long, value_parser = parse_range)]
    range: (i64, i64),
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    /// d1, d2, d3, singular, parking, identities, polyfit, oeis or all.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Include DH_4(C[x,y,z]) in the d3 suite.
    #[arg(long)]
    extended: bool,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

fn parse_capacity(s: &str) -> Result<CapacityVector, String> {
    CapacityVector::parse(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo < 0 || hi < lo {
        return Err(format!("need 0 <= lo <= hi, got {lo}..{hi}"));
    }
    Ok((lo, hi))
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::NonConvergence { .. } => EXIT_RESOURCE,
        Error::Inconsistent(_) | Error::NotPolynomial => EXIT_MISMATCH,
        Error::Domain(_)
        | Error::LengthMismatch { .. }
        | Error::RankMismatch(..)
        | Error::GridTooSmall { .. }
        | Error::Unsupported(_) => EXIT_USAGE,
    }
}

fn run(cli: &Cli) -> Result<commands::Outcome, Error> {
    let budget = cli.budget;
    let timings = cli.timings;
    match &cli.command {
        Command::Dims(a) => commands::module(a, budget, false),
        Command::Weights(a) => commands::module(a, budget, true),
        Command::Char(a) => commands::char(a),
        Command::Parking(a) => commands::parking(a, budget),
        Command::Oracle(a) => commands::oracle(a, budget, timings),
        Command::Polyfit(a) => commands::polyfit(a),
        Command::Verify(a) => commands::verify(a, budget, timings),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dims(_) => "dims",
        Command::Weights(_) => "weights",
        Command::Char(_) => "char",
        Command::Parking(_) => "parking",
        Command::Oracle(_) => "oracle",
        Command::Polyfit(_) => "polyfit",
        Command::Verify(_) => "verify",
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(EXIT_RESOURCE);
        }
    }

    let cache = match (&cli.cache_dir, cli.timings) {
        (Some(dir), false) => match cache::Cache::new(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled, cannot use {}: {e}", dir.display());
                None
            }
        },
        _ => None,
    };
    let key = cache::key(
        command_name(&cli.command),
        &format!("{:?}|{:?}|budget={}", cli.command, cli.format, cli.budget),
    );
    if let Some(entry) = cache.as_ref().and_then(|c| c.get(&key)) {
        emit(&entry.output);
        return ExitCode::from(entry.exit as u8);
    }

    let code = match run(&cli) {
        Ok(outcome) => {
            let text = outcome.doc.render(cli.format);
            if let Some(c) = &cache {
                let entry = cache::Entry {
                    output: text.clone(),
                    exit: outcome.exit as i32,
                };
                if let Err(e) = c.put(&key, &entry) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            emit(&text);
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    if cli.timings {
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    ExitCode::from(code)
}
