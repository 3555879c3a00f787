use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use oa_control::oa;
use oa_control::schemes::{
    controlize, derive_time_reversal, scheme_from_oa, scheme_from_oa_colored, us_to_vs, weight_report,
    Scheme,
};

use crate::error::{CliError, CliResult};
use crate::{emit, parse_list, read_text};

#[derive(Args)]
pub struct Source {
    /// Scheme file in the export format.
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum SchemeCommand {
    /// Turn an array into a decoupling scheme with tau = 1/N.
    Compile {
        /// Array file (rows of symbols).
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        oa: Option<PathBuf>,
        /// Bundled array: fig1 or oa32.
        #[arg(long)]
        builtin: Option<String>,
        /// Qudit dimension; the array needs d^2 levels.
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Strength the array is checked at.
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Keep these 1-based columns.
        #[arg(long, conflicts_with = "colors")]
        columns: Option<String>,
        /// Drive qudit i with column colors[i] (1-based colors).
        #[arg(long)]
        colors: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift every step to Lambda(U).
    Controlize {
        #[command(flatten)]
        source: Source,
        /// Emit a gate list in the ctrl(U) convention, with X on the
        /// control qubit turning each ctrl(U) into Lambda(U).
        #[arg(long)]
        gates: bool,
    },
    /// Derive the time-reversal scheme.
    Reverse(Source),
    /// Re-emit a scheme, or its V-form sequence with `--vform`.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        vform: bool,
    },
    /// Weights of the V-form operations.
    Weights {
        #[arg(long)]
        file: PathBuf,
    },
}

fn load(path: &Path) -> CliResult<Scheme> {
    Ok(Scheme::parse(&read_text(path)?)?)
}

fn one_based(list: &str) -> CliResult<Vec<usize>> {
    let v = parse_list(list)?;
    if v.contains(&0) {
        return Err(CliError::Usage("columns and colors are 1-based".into()));
    }
    Ok(v.into_iter().map(|c| c - 1).collect())
}

/// Per step: `X c; ctrl U_j; X c; evolve tau_j; X c; ctrl U_j^dagger; X c`.
/// The control is qubit 0; targets keep their 1-based labels.
fn gate_list(c: &Scheme) -> String {
    let mut text = format!(
        "# gates n={} d={} control=0 steps={}\n",
        c.num_qudits(),
        c.d(),
        c.len()
    );
    for step in c.steps() {
        for line in [
            "X c".to_string(),
            format!("ctrl {}", step.u),
            "X c".to_string(),
            format!("evolve {:?}", step.tau),
            "X c".to_string(),
            format!("ctrl {}", step.u.adjoint()),
            "X c".to_string(),
        ] {
            text += &line;
            text.push('\n');
        }
    }
    text
}

pub fn run(cmd: SchemeCommand) -> CliResult<()> {
    match cmd {
        SchemeCommand::Compile { oa: file, builtin, d, t, columns, colors, out } => {
            let arr = match (file, builtin.as_deref()) {
                (Some(path), _) => oa::load(&read_text(&path)?, d * d, t, false)?,
                (None, Some("fig1" | "oa16")) => oa::figure1(),
                (None, Some("oa32")) => oa::oa_32_9_4_2(),
                (None, other) => return Err(CliError::Usage(format!("unknown array {other:?}"))),
            };
            let scheme = match (columns, colors) {
                (Some(c), _) => scheme_from_oa(&oa::restrict_columns(&arr, &one_based(&c)?)?, d)?,
                (None, Some(c)) => scheme_from_oa_colored(&arr, d, &one_based(&c)?)?,
                (None, None) => scheme_from_oa(&arr, d)?,
            };
            emit(&out, &scheme.render())
        }
        SchemeCommand::Controlize { source, gates } => {
            let c = controlize(&load(&source.file)?)?;
            let text = if gates { gate_list(&c) } else { c.render() };
            emit(&source.out, &text)
        }
        SchemeCommand::Reverse(src) => emit(&src.out, &derive_time_reversal(&load(&src.file)?)?.render()),
        SchemeCommand::Export { source, vform } => {
            let scheme = load(&source.file)?;
            if !vform {
                return emit(&source.out, &scheme.render());
            }
            let vs = us_to_vs(&scheme);
            let mut text = format!(
                "# vform N={} n={} d={}\n",
                vs.len(),
                scheme.num_qudits(),
                scheme.d()
            );
            for v in vs {
                text += &format!("{v}\n");
            }
            emit(&source.out, &text)
        }
        SchemeCommand::Weights { file } => {
            let report = weight_report(&load(&file)?);
            let weights: Vec<String> = report.weights.iter().map(usize::to_string).collect();
            println!("weights {}", weights.join(" "));
            println!("max {}", report.max);
            println!("mean {:.4}", report.mean);
            Ok(())
        }
    }
}
