//! The `virapath` command line: character series, path listings, orbit
//! traces and the verification suites.
//!
//! Exit codes: 0 pass, 1 a checked statement failed, 2 usage or parameter
//! error, 3 a length cap stopped a search early.

mod commands;
mod seed;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::exactq::ExactRational;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "virapath", version, about = "Rigged paths and Virasoro minimal-model characters")]
pub struct Cli {
    /// Worker threads; by default one per core.
    #[arg(long, global = true, env = "VIRAPATH_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print chi_{r,s} by one or more methods.
    Char(CharArgs),
    /// List the admissible paths of one length.
    Enumerate(EnumerateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Apply a move word to a path and trace every step.
    Orbit(OrbitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bosonic,
    Fermionic,
    Paths,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Main,
    CharRec,
    PathRec,
    Gauss,
    Fk,
    Moves,
    Bijection,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub pp: Option<i64>,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub r: i64,
    #[arg(long, default_value_t = 1)]
    pub s: i64,
    /// Restrict to one length: the partial fermionic sum or `ch C_{L,r}`.
    #[arg(long = "L")]
    pub len: Option<usize>,
    /// Truncation bound, an integer or `num/den`.
    #[arg(long)]
    pub trunc: ExactRational,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = crate::path_comb::DEFAULT_L_CAP)]
    pub l_cap: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long = "L")]
    pub len: usize,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub max_degree: ExactRational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Option<Suite>,
    /// Run the full acceptance matrix instead of one suite.
    #[arg(long)]
    pub seed_suite: bool,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Defaults to every `r` in `1..p`.
    #[arg(long)]
    pub r: Option<i64>,
    /// One length for the recurrences (default: all `L <= 12`); the maximal
    /// length for `moves` and `bijection` (default 6).
    #[arg(long = "L")]
    pub len: Option<usize>,
    #[arg(long)]
    pub trunc: Option<ExactRational>,
    /// For `moves` and `bijection`: the degree cutoff above `Delta_{r,1}`.
    #[arg(long)]
    pub max_degree: Option<ExactRational>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long, default_value_t = crate::path_comb::DEFAULT_L_CAP)]
    pub l_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// `r_L,...,r_0;s_{L-1},...,s_0`.
    #[arg(long)]
    pub path: String,
    /// Comma-separated moves such as `+1,+1,-2`.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub apply: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapReached(_) => EXIT_CAP,
        Error::Internal(_) => EXIT_FALSIFIED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args`, runs the command and writes to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // A pool set up earlier in the process stays in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::Char(a) => commands::char_cmd(a, out),
        Command::Enumerate(a) => commands::enumerate_cmd(a, out),
        Command::Verify(a) => commands::verify_cmd(a, out),
        Command::Orbit(a) => commands::orbit_cmd(a, out),
    };
    match result {
        Ok(code) => code,
        // A reader such as `head` went away; nothing left to report.
        Err(Error::OutOfRange(m)) if m == commands::BROKEN_PIPE => EXIT_PASS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock)
}
