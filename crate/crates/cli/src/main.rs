//! `latile`: search, certify, construct, verify and analyze lattice tilings
//! by the ball `B(n,2,1,1)`.
//!
//! Exit status: 0 on success (including nonexistence results), 1 when
//! `verify` finds the map is not a bijection, 2 on usage or input errors,
//! 3 on internal errors.

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use latile::analysis::analyze;
use latile::certify::{certify_nonexistence, validate_certificate};
use latile::construct::golay11_tiling;
use latile::search::{search_tilings, SearchOptions, DEFAULT_BUDGET};
use latile::{generate_ball, Error, TilingHomomorphism};

const THREADS_ENV: &str = "LATILE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "latile",
    version,
    about = "Lattice tilings by limited-magnitude error balls"
)]
struct Cli {
    /// Output rendering on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive search over every abelian group of order 2n^2+1.
    Search(SearchArgs),
    /// Modular nonexistence certificate for n.
    Certify {
        #[arg(short = 'n')]
        n: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Write a known tiling map.
    Construct {
        #[arg(value_enum)]
        which: Construction,
        #[command(flatten)]
        out: Output,
    },
    /// Check that a map sends the ball bijectively onto its group.
    Verify {
        /// Map JSON, or `-` for standard input.
        map: PathBuf,
        /// Ball parameters `n,t,k+,k-`; defaults to `n,2,1,1`.
        #[arg(long, value_parser = parse_ball)]
        ball: Option<BallParams>,
        #[command(flatten)]
        out: Output,
    },
    /// Spectrum, counting identities and congruences for the code set of a map.
    Analyze {
        /// Map JSON, or `-` for standard input.
        map: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// List the vectors of B(n,t,k+,k-).
    Ball {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 't')]
        t: usize,
        #[arg(long)]
        kplus: i64,
        #[arg(long)]
        kminus: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(3..))]
    n: u64,
    /// Test every candidate instead of one per multiplier orbit.
    #[arg(long)]
    no_reduce: bool,
    /// Refuse runs with more candidates than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: u128,
    /// Run even when the budget is exceeded.
    #[arg(long)]
    force: bool,
    /// Worker threads (overrides LATILE_THREADS).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Suppress progress lines on standard error.
    #[arg(long, short = 'q')]
    quiet: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON artifact here instead of standard output.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Golay11,
}

#[derive(Debug, Clone, Copy)]
struct BallParams {
    n: usize,
    t: usize,
    k_plus: i64,
    k_minus: i64,
}

fn parse_ball(s: &str) -> Result<BallParams, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected n,t,k+,k- but got {s:?}"));
    }
    let num = |i: usize| {
        parts[i]
            .parse::<i64>()
            .map_err(|e| format!("{:?}: {e}", parts[i]))
    };
    let (n, t) = (num(0)?, num(1)?);
    if n < 0 || t < 0 {
        return Err("n and t must be nonnegative".into());
    }
    Ok(BallParams {
        n: n as usize,
        t: t as usize,
        k_plus: num(2)?,
        k_minus: num(3)?,
    })
}

fn parse_budget(s: &str) -> Result<u128, String> {
    let b: u128 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if b == 0 {
        return Err("budget must be positive".into());
    }
    Ok(b)
}

/// Failures, split by exit status.
enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Overflow => Failure::Internal(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

/// Returns whether the command succeeded; only `verify` can report `false`.
fn run(cli: Cli) -> Result<bool, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Search(args) => {
            let options = SearchOptions {
                budget: args.budget,
                force: args.force,
                reduce: !args.no_reduce,
                threads: thread_count(args.threads)?,
                progress: !args.quiet,
            };
            let result = search_tilings(args.n, &options)?;
            emit(&result, &args.out, format, render::search)?;
        }
        Command::Certify { n, out } => {
            let outcome = certify_nonexistence(n)?;
            if let Some(cert) = outcome.certificate() {
                // never publish a certificate the validator rejects
                validate_certificate(cert).map_err(|defects| {
                    Failure::Internal(anyhow!(
                        "certificate failed validation: {}",
                        defects.join("; ")
                    ))
                })?;
            }
            emit(&outcome, &out, format, render::certify)?;
        }
        Command::Construct { which, out } => {
            let map = match which {
                Construction::Golay11 => golay11_tiling(),
            };
            emit(&map, &out, format, render::map)?;
        }
        Command::Verify { map, ball, out } => {
            let phi = read_map(&map)?;
            let p = ball.unwrap_or(BallParams {
                n: phi.n(),
                t: 2,
                k_plus: 1,
                k_minus: 1,
            });
            let ball = generate_ball(p.n, p.t, p.k_plus, p.k_minus)?;
            let report = phi.verify_tiling(&ball)?;
            emit(&report, &out, format, render::verification)?;
            return Ok(report.bijective);
        }
        Command::Analyze { map, out } => {
            let phi = read_map(&map)?;
            let t = phi.induced_code_set();
            let report = analyze(&t, phi.n() as u64)?;
            emit(&report, &out, format, render::analysis)?;
        }
        Command::Ball {
            n,
            t,
            kplus,
            kminus,
            out,
        } => {
            let ball = generate_ball(n, t, kplus, kminus)?;
            emit(&ball, &out, format, render::ball)?;
        }
    }
    Ok(true)
}

/// `--threads`, then `LATILE_THREADS`, then rayon's default.
fn thread_count(flag: Option<u64>) -> Result<Option<usize>, Failure> {
    if let Some(t) = flag {
        return Ok(Some(t as usize));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::Usage(anyhow!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn read_map(path: &Path) -> Result<TilingHomomorphism, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Usage)?
    };
    serde_json::from_str(&text)
        .with_context(|| format!("parsing map from {}", path.display()))
        .map_err(Failure::Usage)
}

/// JSON goes to `-o` when given, else to stdout. With `--format human`, the
/// rendering goes to stdout either way.
fn emit<T: Serialize>(
    value: &T,
    out: &Output,
    format: Format,
    human: fn(&T) -> String,
) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.into()))? + "\n";
    let mut stdout = io::stdout().lock();
    if let Some(path) = &out.path {
        fs::write(path, &json)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Usage)?;
    }
    match (format, &out.path) {
        (Format::Human, _) => stdout.write_all(human(value).as_bytes())?,
        (Format::Json, None) => stdout.write_all(json.as_bytes())?,
        (Format::Json, Some(_)) => {}
    }
    Ok(())
}
