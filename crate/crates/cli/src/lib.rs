//! Command-line front end: check law profiles on structure files, run
//! constructors and grid searches, and emit the fixture catalog.
//!
//! Exit codes: 0 on success, 1 when a law fails (or a search finds nothing),
//! 2 on unreadable or invalid input.

pub mod file;
pub mod report;

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use prelie_core::Error;

pub use commands::{check_report, fixture_file_name, parse_bindings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Core(#[from] Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "IO_ERROR",
            CliError::Invalid(_) => "INVALID_INPUT",
            CliError::Core(e) => e.kind(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Unknown {
    Operator,
    SymmetricTensor,
    Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    DeltaFromR,
    CircFromOmega,
    NijenhuisFromPairing,
    ConijenhuisFromPairing,
    OmegaFromR,
    RegularRep,
    DualRep,
    Semidirect,
    MatchedPair,
    Pencil,
    CentralExtension,
    InduceLie,
    LiftOOperator,
}

#[derive(Debug, Parser)]
#[command(name = "prelie-forge", version, about = "Exact checks and searches for pre-Lie structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a law profile on a structure file.
    Check {
        file: PathBuf,
        /// Comma-separated law names or profile aliases.
        #[arg(long)]
        laws: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Bind a parameter to a rational value before checking.
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        bind: Vec<String>,
    },
    /// Run a constructor and write the resulting structure file.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Constructor argument, e.g. `r=r2`, `out=N`, `s=2`.
        #[arg(long = "arg", value_name = "KEY=VALUE")]
        args: Vec<String>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        bind: Vec<String>,
    },
    /// Enumerate a grid of candidates for one unknown member.
    Search {
        file: PathBuf,
        #[arg(long, value_enum)]
        unknown: Unknown,
        /// Member name; defaults to N, r or omega by shape.
        #[arg(long)]
        member: Option<String>,
        /// Comma-separated rational entries.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        entries: String,
        #[arg(long)]
        laws: String,
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        bind: Vec<String>,
        /// Enumerate symmetric forms only.
        #[arg(long)]
        symmetric: bool,
        /// Exit 0 even when nothing is found.
        #[arg(long)]
        allow_empty: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List or write the built-in fixtures.
    Fixtures {
        #[arg(long)]
        list: bool,
        /// Write one fixture into a directory.
        #[arg(long, num_args = 2, value_names = ["NAME", "DIR"])]
        emit: Option<Vec<String>>,
        /// Write every fixture into a directory.
        #[arg(long, value_name = "DIR")]
        emit_all: Option<PathBuf>,
    },
}

/// Run the tool on `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error [{}]: {e}", e.kind());
            2
        }
    }
}
