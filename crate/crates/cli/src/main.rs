//! Command-line surface for the exterior-power toolkit.
//!
//! Six subcommands: `verify` (exact identity checks), `table` (the measure
//! as a file), `sample` (seeded draws from one of three samplers), `shape`
//! (profile statistics and pictures), `character` (trace identities), and
//! `bijection` (the column-complement involution on tableaux).
//!
//! Exit status contract, stable across versions:
//! 0 success, 1 theorem-check failure, 2 resource cap, 64 usage error.
//! I/O failures exit 74.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

pub(crate) const EXIT_MISMATCH: i32 = 1;
pub(crate) const EXIT_RESOURCE: i32 = 2;
pub(crate) const EXIT_USAGE: i32 = 64;
pub(crate) const EXIT_IO: i32 = 74;

/// Terminal outcome of a command, carrying the exit status to report.
pub(crate) enum Failure {
    /// Bad arguments (exit 64).
    Usage(String),
    /// Request exceeds a documented size cap (exit 2).
    Resource(String),
    /// A verified identity failed to hold (exit 1).
    Mismatch(String),
    /// Output could not be written (exit 74).
    Io(std::io::Error),
}

impl From<skew_howe::Error> for Failure {
    fn from(err: skew_howe::Error) -> Self {
        match err {
            skew_howe::Error::Resource(msg) => Failure::Resource(msg),
            skew_howe::Error::Inconsistency(msg) => Failure::Mismatch(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Io(err)
    }
}

#[derive(Parser)]
#[command(
    name = "skew-howe",
    version,
    about = "Exact identities and random sampling for irreducible components of exterior powers",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the measure identities for (m, n), across all powers or one power
    Verify(VerifyArgs),
    /// Emit the exact probability table for (m, n, p)
    Table(TableArgs),
    /// Draw seeded samples from the exact, chain, or tableau sampler
    Sample(SampleArgs),
    /// Sample rescaled profiles and emit mean/spread statistics or a picture
    Shape(ShapeArgs),
    /// Verify character identities: restriction, power independence, traces
    Character(CharacterArgs),
    /// Run the column-complement bijection on tableaux and emit the pairs
    Bijection(BijectionArgs),
}

#[derive(Args)]
struct Grid {
    /// Rows of the ambient rectangle (dimension of the first tensor factor)
    #[arg(long)]
    m: usize,
    /// Columns of the ambient rectangle (dimension of the second tensor factor)
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    grid: Grid,
    /// Power to check; when omitted every 0 <= p <= m*n is checked
    #[arg(long)]
    p: Option<usize>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    grid: Grid,
    /// Number of boxes (degree of the exterior power)
    #[arg(long)]
    p: usize,
    /// Table format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    grid: Grid,
    /// Number of boxes (degree of the exterior power)
    #[arg(long)]
    p: usize,
    /// Number of draws
    #[arg(long, default_value_t = 1_000)]
    samples: u64,
    /// Master seed; per-stream seeds derive from it deterministically
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling algorithm
    #[arg(long, value_enum, default_value_t = SamplerKind::Syt)]
    sampler: SamplerKind,
    /// Stream format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the stream here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ShapeArgs {
    #[command(flatten)]
    grid: Grid,
    /// Number of boxes (degree of the exterior power)
    #[arg(long)]
    p: usize,
    /// Number of draws (at least 2, so spreads are defined)
    #[arg(long, default_value_t = 2_000)]
    samples: u64,
    /// Master seed; per-stream seeds derive from it deterministically
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling algorithm
    #[arg(long, value_enum, default_value_t = SamplerKind::Syt)]
    sampler: SamplerKind,
    /// Output format; svg draws sample overlays plus the mean staircase
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CharacterArgs {
    #[command(flatten)]
    grid: Grid,
    /// Number of boxes (degree of the exterior power)
    #[arg(long)]
    p: usize,
    /// Larger power for the independence check (requires p <= p')
    #[arg(long = "p-prime")]
    p_prime: Option<usize>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BijectionArgs {
    #[command(flatten)]
    grid: Grid,
    /// Restrict to shapes with this many boxes; when omitted (and no
    /// --shape) every shape inside the rectangle is processed
    #[arg(long)]
    p: Option<usize>,
    /// Single shape as comma-separated parts, e.g. 7,5,4,2 ("" for empty)
    #[arg(long)]
    shape: Option<String>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum SamplerKind {
    Exact,
    Chain,
    Syt,
}

impl SamplerKind {
    pub(crate) fn label(self) -> &'static str {
        match self {
            SamplerKind::Exact => "exact",
            SamplerKind::Chain => "chain",
            SamplerKind::Syt => "syt",
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            process::exit(code);
        }
    };

    if let Err(failure) = run(cli) {
        let (code, label, message) = match failure {
            Failure::Usage(msg) => (EXIT_USAGE, "usage error", msg),
            Failure::Resource(msg) => (EXIT_RESOURCE, "resource cap", msg),
            Failure::Mismatch(msg) => (EXIT_MISMATCH, "verification failed", msg),
            Failure::Io(err) => (EXIT_IO, "i/o error", err.to_string()),
        };
        eprintln!("skew-howe: {label}: {message}");
        process::exit(code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Table(args) => commands::cmd_table(args),
        Command::Sample(args) => commands::cmd_sample(args),
        Command::Shape(args) => commands::cmd_shape(args),
        Command::Character(args) => commands::cmd_character(args),
        Command::Bijection(args) => commands::cmd_bijection(args),
    }
}

/// Shared post-parse validation: grid positivity and the power range.
pub(crate) fn validate_grid(grid: &Grid, p: Option<usize>) -> Result<(), Failure> {
    if grid.m == 0 || grid.n == 0 {
        return Err(Failure::Usage(format!(
            "need m >= 1 and n >= 1; got m={}, n={}",
            grid.m, grid.n
        )));
    }
    if let Some(p) = p {
        if p > grid.m * grid.n {
            return Err(Failure::Usage(format!(
                "need 0 <= p <= m*n = {}; got p={p}",
                grid.m * grid.n
            )));
        }
    }
    Ok(())
}

pub(crate) fn require_format(actual: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&actual) {
        Ok(())
    } else {
        let names: Vec<&str> = allowed
            .iter()
            .map(|f| match f {
                Format::Json => "json",
                Format::Csv => "csv",
                Format::Svg => "svg",
            })
            .collect();
        Err(Failure::Usage(format!(
            "`{command}` supports formats {}; use one of those",
            names.join(", ")
        )))
    }
}

/// Writes the finished document to `--out` or standard output.
pub(crate) fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}
