//! Command-line front end: JSON inputs, text or JSON reports, exit codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 schema error, 3 validation
//! error, 4 disagreement between the computation and an expected identity.

mod input;
mod report;
mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use input::{
    CoefficientSpec, GaloisDatumSpec, GeneratorSpec, GroupSpec, InputDocument, InvolutionSpec, LatticeSpec,
    SplitExtensionSpec,
};
pub use report::{cmd_d2, cmd_qt_brauer, cmd_real_torus, cmd_v2, ReportDocument};
pub use selftest::{cmd_selftest, random_datum, random_involution, random_unimodular, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "torus-brauer", version, about = "Brauer groups of algebraic tori and Hochschild-Serre d2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit the JSON report (default).
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable report.
    #[arg(long)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbol basis of the transcendental Brauer group of a quasi-trivial torus.
    QtBrauer {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Levelwise d2 for a real torus given by an involution lattice.
    RealTorus {
        input: PathBuf,
        /// Coefficient levels n for mu_n.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 4, 8])]
        modulus: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// d2^{0,2} of a split extension and the pushforward check.
    D2 {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The class v2 of a split extension and the pushforward check.
    V2 {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized internal consistency checks.
    Selftest {
        /// Run a single suite.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

fn execute(command: &Command) -> Result<(ReportDocument, bool), CliError> {
    match command {
        Command::QtBrauer { input, output } => Ok((cmd_qt_brauer(&InputDocument::load(input)?)?, output.text)),
        Command::RealTorus { input, modulus, output } => {
            Ok((cmd_real_torus(&InputDocument::load(input)?, modulus)?, output.text))
        }
        Command::D2 { input, output } => Ok((cmd_d2(&InputDocument::load(input)?)?, output.text)),
        Command::V2 { input, output } => Ok((cmd_v2(&InputDocument::load(input)?)?, output.text)),
        Command::Selftest { suite, seed, output } => Ok((cmd_selftest(suite.as_deref(), *seed)?, output.text)),
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok((report, text)) => {
            let _ = if text { out.write_all(report.text.as_bytes()) } else { out.write_all(report.to_json_string().as_bytes()) };
            let _ = writeln!(err, "elapsed: {:.2?}", start.elapsed());
            match report.disagreement {
                Some(msg) => {
                    let _ = writeln!(err, "disagreement: {msg}");
                    EXIT_DISAGREEMENT
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
