use std::path::PathBuf;

use clap::Subcommand;
use oa_control::gf::Field;
use oa_control::oa::{self, OrthogonalArray, VerificationReport};

use crate::error::{CliError, CliResult};
use crate::{emit, parse_list, read_text};

#[derive(Subcommand)]
pub enum OaCommand {
    /// Rao-Hamming array OA(s^ell, (s^ell - 1)/(s - 1), s, 2).
    Construct {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every t columns are balanced.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Each line of the file is a column.
        #[arg(long)]
        transpose: bool,
    },
    /// Keep a subset of columns (1-based, comma separated).
    Restrict {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long)]
        columns: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a bundled array: fig1 (OA(16,5,4,2)) or oa32 (OA(32,9,4,2)).
    Builtin {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn status(arr: &OrthogonalArray) -> CliResult<String> {
    match oa::verify(arr) {
        VerificationReport::Ok { lambda } => Ok(format!("OK strength {}, lambda {lambda}", arr.strength())),
        bad => Err(CliError::Failure(format!("VIOLATION: {bad}"))),
    }
}

fn write_array(arr: &OrthogonalArray, out: &Option<PathBuf>) -> CliResult<()> {
    let line = status(arr)?;
    emit(out, &oa::render(arr))?;
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(())
}

pub fn run(cmd: OaCommand) -> CliResult<()> {
    match cmd {
        OaCommand::Construct { s, ell, out } => {
            let field = Field::with_order(s)?;
            write_array(&oa::construct_rao_hamming(&field, ell)?, &out)
        }
        OaCommand::Verify { file, s, t, transpose } => {
            let arr = oa::parse(&read_text(&file)?, s, t, transpose)?;
            println!("{}", status(&arr)?);
            Ok(())
        }
        OaCommand::Restrict { file, s, t, columns, out } => {
            let arr = oa::load(&read_text(&file)?, s, t, false)?;
            let cols = parse_list(&columns)?;
            if cols.contains(&0) {
                return Err(CliError::Usage("columns are 1-based".into()));
            }
            let zero_based: Vec<usize> = cols.iter().map(|c| c - 1).collect();
            write_array(&oa::restrict_columns(&arr, &zero_based)?, &out)
        }
        OaCommand::Builtin { name, out } => {
            let arr = match name.as_str() {
                "fig1" | "oa16" => oa::figure1(),
                "oa32" => oa::oa_32_9_4_2(),
                _ => return Err(CliError::Usage(format!("unknown array {name:?}; use fig1 or oa32"))),
            };
            write_array(&arr, &out)
        }
    }
}
