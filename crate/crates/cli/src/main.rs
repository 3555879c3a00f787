//! `oactl`: orthogonal arrays, decoupling schemes and benchmarks from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O or parse, 4 verification or guard
//! failure.

mod bench;
mod error;
mod misc;
mod oa_cmd;
mod scheme_cmd;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "oactl", version, about = "Orthogonal-array decoupling and controlization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct, verify and restrict orthogonal arrays.
    #[command(subcommand)]
    Oa(oa_cmd::OaCommand),
    /// Compile arrays into schemes and transform them.
    #[command(subcommand)]
    Scheme(scheme_cmd::SchemeCommand),
    /// Run a benchmark described by a TOML config and write CSV.
    #[command(subcommand)]
    Bench(bench::BenchCommand),
    /// Color the interaction graph of a Hamiltonian.
    Color(misc::ColorArgs),
    /// Estimate Trotter steps and controlled operations.
    Resources(misc::ResourcesArgs),
}

pub(crate) fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// Writes to `out`, or to stdout when absent.
pub(crate) fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `1,3,5` into 1-based column numbers.
pub(crate) fn parse_list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad number {w:?} in list {text:?}")))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Oa(c) => oa_cmd::run(c),
        Command::Scheme(c) => scheme_cmd::run(c),
        Command::Bench(c) => bench::run(c),
        Command::Color(a) => misc::color(a),
        Command::Resources(a) => misc::resources(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
