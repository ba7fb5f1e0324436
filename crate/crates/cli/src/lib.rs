//! The `xq` command line: axiom checks on structure files, homotopy
//! decisions between morphisms, and the classification of self-maps of
//! `S²×S²` fixing the diagonal.
//!
//! [`run`] is the whole program; the binary only forwards `argv` and the
//! standard streams.

pub mod convert;
pub mod format;

mod commands;
mod report;

pub use commands::exported_files;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
/// A check failed, or the morphisms are not homotopic.
pub const EXIT_FAILED: i32 = 1;
/// Bad command line, unreadable or invalid input.
pub const EXIT_USAGE: i32 = 2;

pub const SEED_VAR: &str = "XQ_SEED";

#[derive(Parser, Debug)]
#[command(name = "xq", version, about = "Exact algebraic models of homotopy types")]
struct Cli {
    /// Seed for randomized axiom sampling; overrides XQ_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom of the structure in FILE.
    Check {
        file: PathBuf,
        /// Random products sampled per axiom, on top of the generator checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two morphisms of a homotopy problem are homotopic.
    Homotopic(HomotopicArgs),
    /// Print FILE in canonical form.
    Fmt {
        file: PathBuf,
        /// Only report whether FILE is already canonical (exit 1 if not).
        #[arg(long)]
        check: bool,
    },
    /// Self-maps of S²×S² fixing the diagonal.
    #[command(name = "s2xs2", subcommand)]
    S2xS2(SphereCommand),
}

#[derive(Args, Debug)]
struct HomotopicArgs {
    /// A `homotopy_problem` or `xc3_homotopy_problem` file.
    file: PathBuf,
    /// First morphism: a name from the problem file, or a morphism file.
    #[arg(long = "f")]
    f: String,
    /// Second morphism.
    #[arg(long = "g")]
    g: String,
    /// Coefficient radius for bounded search.
    #[arg(long, default_value_t = 10)]
    bound: u32,
    /// Search the coefficient box instead of solving exactly.
    #[arg(long)]
    search: bool,
    /// Generator priority for the canonical witness, e.g. `0,2,1`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Re-check this witness file instead of solving.
    #[arg(long)]
    verify: Option<PathBuf>,
    /// Write the witness found as a structure file.
    #[arg(long)]
    save_witness: Option<PathBuf>,
    /// Random products sampled when re-verifying a witness.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SphereCommand {
    /// Enumerate retractions Q → 𝒟 and sort them into homotopy classes.
    Classify {
        #[arg(long, default_value_t = 10)]
        r_bound: u32,
        #[arg(long, default_value_t = 3)]
        ab_range: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the monoid M̄ of self-maps and optionally print its tables.
    Monoid {
        /// Print the 4×4 table of M and the 16×16 table of M̄.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive the number of self-maps.
    Count {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the sphere, the cylinder and a homotopy problem as structure files.
    Export { dir: PathBuf },
}

/// Runs `xq` with `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let seed = match resolve_seed(cli.seed) {
        Ok(seed) => seed,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match commands::dispatch(cli.command, seed, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_VAR}={s} is not an unsigned integer")),
        Err(_) => Ok(xq_core::report::DEFAULT_SEED),
    }
}
