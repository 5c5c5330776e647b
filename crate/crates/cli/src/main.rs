use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

mod commands;
mod settings;

/// Leech lattice kissing configurations and lower bounds in dimensions 25-31.
#[derive(Parser, Debug)]
#[command(name = "kissing", version)]
pub struct Cli {
    /// key=value file supplying defaults for the subcommand's options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory holding minvects.txt to load instead of regenerating the
    /// vectors; the file is checked against the lattice.
    #[arg(long, global = true)]
    lattice: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Write minvects.txt and vbasis.txt.
    #[command(args_override_self = true)]
    Generate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Find a compatible set by greedy construction or annealing.
    #[command(args_override_self = true)]
    Search(SearchArgs),
    /// Spread a compatible set into disjoint images.
    #[command(args_override_self = true)]
    Family(FamilyArgs),
    /// Kissing-number lower bounds for dimensions 25-31.
    #[command(args_override_self = true)]
    Bounds(BoundsArgs),
    /// Build and verify explicit configurations from a family.
    #[command(args_override_self = true)]
    Certify(CertifyArgs),
    /// Check a set, a family directory or an exported certificate.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Convert foreign vector files to the native format.
    #[command(args_override_self = true)]
    Import {
        /// A vector file or a directory of them.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Greedy,
    Anneal,
    /// Antipodal greedy pass over a fixed coordinate-magnitude ordering.
    Structured,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "greedy")]
    pub mode: SearchMode,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Greedy runs; the largest result is kept.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Independent annealing chains.
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub t_max: u64,
    #[arg(long, default_value_t = 2.0)]
    pub t0: f64,
    /// Use `T0 (1 - t/t_max)^p` instead of the linear schedule.
    #[arg(long)]
    pub power: Option<f64>,
    /// Keep sets closed under negation.
    #[arg(long)]
    pub antipodal: bool,
    /// Annealing start; defaults to a seeded greedy set per chain.
    #[arg(long)]
    pub start: Option<PathBuf>,
    /// Stop annealing once the best set reaches this size.
    #[arg(long)]
    pub target_size: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 51)]
    pub count: usize,
    /// Sampled automorphisms per subset.
    #[arg(long, default_value_t = 5000)]
    pub tries: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Greedily extend each image with unused vectors.
    #[arg(long)]
    pub augment: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Size of the starting set.
    #[arg(long, required_unless_present = "family")]
    pub base: Option<i64>,
    #[arg(long, default_value = "algnew")]
    pub mode: kissing_core::bounds::BoundMode,
    /// Also evaluate the bounds for this family's actual sizes.
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[arg(long, default_value = "25-31")]
    pub dims: String,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Fast,
    Full,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub family: PathBuf,
    /// A dimension in 25..=31, or `all`.
    #[arg(long, default_value = "all")]
    pub dim: String,
    #[arg(long, value_enum, default_value = "fast")]
    pub verify_mode: CheckMode,
    /// Seed for the fast-mode spot checks.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pad short families with empty subsets instead of failing.
    #[arg(long)]
    pub pad: bool,
    /// Write each certificate as cert_<dim>.json into this directory.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Write the verification reports as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "target")]
pub struct VerifyTarget {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: VerifyTarget,
    #[arg(long, value_enum, default_value = "fast")]
    pub verify_mode: CheckMode,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const VERIFICATION: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;

    pub fn verification(message: impl Into<String>) -> Self {
        CliError { code: Self::VERIFICATION, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: Self::USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { code: Self::IO, message: message.into() }
    }
}

impl From<kissing_core::Error> for CliError {
    fn from(e: kissing_core::Error) -> Self {
        use kissing_core::Error as E;
        let code = match &e {
            E::Io(_) | E::Json(_) | E::Parse { .. } => Self::IO,
            E::InvalidParams(_) | E::UnsupportedDimension(_) => Self::USAGE,
            _ => Self::VERIFICATION,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::io(e.to_string())
    }
}

fn parse_cli(args: Vec<OsString>) -> Result<Cli, ExitCode> {
    let cmd = Cli::command();
    let args = settings::merge(&cmd, args).map_err(|e| {
        eprintln!("error: {}", e.message);
        ExitCode::from(e.code)
    })?;
    let matches = cmd.try_get_matches_from(args).map_err(|e| {
        let _ = e.print();
        ExitCode::from(if e.use_stderr() { CliError::USAGE } else { 0 })
    })?;
    Cli::from_arg_matches(&matches).map_err(|e| {
        let _ = e.print();
        ExitCode::from(CliError::USAGE)
    })
}

fn main() -> ExitCode {
    let cli = match parse_cli(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(CliError::USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
