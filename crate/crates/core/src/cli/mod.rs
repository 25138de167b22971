//! The `pgl` command line: argument parsing, result caching, output
//! rendering and the `verify` suites.

mod cache;
mod commands;
mod record;
mod spec;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

pub use cache::Cache;
pub use commands::{execute, COMMANDS};
pub use record::{render, Format, Provenance, ResultRecord, RunConfig, VERSION};
pub use spec::parse_group;

use crate::error::Error;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pgl", version, about = "Finite-scale growth quantities of groups, checked against brute force")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simple-module counts r_n and r*_n.
    Repgrowth(Common),
    /// Minimal extension counts by degree and kernel type.
    Extgrowth(Common),
    /// Irreducible tuple censuses for free groups and their lower bounds.
    Freegrowth(Common),
    /// Normal-generation probabilities of kernels of H -> H/N.
    Probgen(Common),
    /// Maximal left ideals of F_p[G] against r_n.
    Idealgrowth(Common),
    /// Run a named check suite.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Group: trivial, Cn, Dm (order 2m), Sn, An, Q8, PSL27, products AxB, powers A^k, or file:PATH.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo trials per probability (0 disables sampling).
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cache directory; the PGL_CACHE environment variable takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Refuse with exit code 3 if the computation has not finished in time.
    #[arg(long)]
    budget_ms: Option<u64>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INVALID,
    }
}

/// Parses `args`, runs the command, writes its output to stdout and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let (name, suite, common) = match cli.command {
        Command::Repgrowth(c) => ("repgrowth", None, c),
        Command::Extgrowth(c) => ("extgrowth", None, c),
        Command::Freegrowth(c) => ("freegrowth", None, c),
        Command::Probgen(c) => ("probgen", None, c),
        Command::Idealgrowth(c) => ("idealgrowth", None, c),
        Command::Verify { suite, common } => ("verify", Some(suite), common),
    };
    let config = RunConfig {
        command: name.to_string(),
        suite,
        group: common.group.clone(),
        p: common.p,
        e: common.e,
        nmax: common.nmax,
        kmax: common.kmax,
        d: common.d,
        seed: common.seed,
        trials: common.trials,
    };
    let cache_dir = std::env::var_os("PGL_CACHE").map(PathBuf::from).or(common.cache.clone());
    let cache = cache_dir.map(Cache::new);
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    let worker_config = config.clone();
    std::thread::spawn(move || {
        let _ = tx.send(execute(&worker_config, cache.as_ref()));
    });
    let outcome = match common.budget_ms {
        Some(ms) => match rx.recv_timeout(Duration::from_millis(ms)) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("error: refused: budget of {ms} ms exhausted before {name} finished");
                return EXIT_BUDGET;
            }
        },
        None => rx.recv().unwrap_or_else(|_| Err(Error::Internal("worker thread panicked".into()))),
    };
    let record = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match render(&record, common.format) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    }
    eprintln!("{name}: {} ms", start.elapsed().as_millis());
    if record.passed {
        EXIT_OK
    } else {
        eprintln!("error: a checked statement failed");
        EXIT_CHECK_FAILED
    }
}

#[cfg(test)]
mod tests;
