use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};
use oa_control::exec::Parallelism;
use oa_control::protocols::{
    run_controlization_experiment, run_decoupling_experiment, ControlizationConfig, ExperimentConfig,
    ResultRow,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::read_text;

pub const CONFIG_DIALECT: &str = "toml/v1";

#[derive(Args)]
pub struct BenchArgs {
    /// TOML experiment description.
    #[arg(long)]
    config: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// JSON run manifest path.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Write 0 in the seconds column so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
    /// Force the single-threaded path.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
pub enum BenchCommand {
    /// Trace-distance sweep over block counts.
    Decouple(BenchArgs),
    /// Controlled-evolution error sweep over Trotter steps.
    Controlize(BenchArgs),
}

fn load_config<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    toml::from_str(&read_text(path)?)
        .map_err(|e| CliError::Io(format!("bad config {}: {e}", path.display())))
}

fn write_csv(path: &Path, rows: &[ResultRow], no_timing: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        if no_timing {
            w.serialize(ResultRow { seconds: 0.0, ..row.clone() })?;
        } else {
            w.serialize(row)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_manifest<C: Serialize>(
    args: &BenchArgs,
    command: &str,
    config: &C,
    seed: Option<u64>,
    rows: &[ResultRow],
    seconds: f64,
) -> CliResult<()> {
    let Some(path) = &args.manifest else {
        return Ok(());
    };
    let mut per_block = serde_json::Map::new();
    for row in rows {
        let entry = per_block.entry(row.blocks.to_string()).or_insert(json!(0.0));
        if row.seconds > entry.as_f64().unwrap_or(0.0) {
            *entry = json!(row.seconds);
        }
    }
    let manifest = json!({
        "tool": "oactl",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config_path": args.config.display().to_string(),
        "config_dialect": CONFIG_DIALECT,
        "config": config,
        "seed": seed,
        "output": args.out.display().to_string(),
        "rows": rows.len(),
        "timings": {
            "total_seconds": if args.no_timing { 0.0 } else { seconds },
            "per_block_seconds": if args.no_timing { serde_json::Map::new() } else { per_block },
        },
    });
    std::fs::write(path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}

pub fn run(cmd: BenchCommand) -> CliResult<()> {
    let start = Instant::now();
    match cmd {
        BenchCommand::Decouple(args) => {
            let mut cfg: ExperimentConfig = load_config(&args.config)?;
            if cfg.blocks.is_empty() || cfg.blocks.contains(&0) {
                return Err(CliError::Usage("`blocks` must list positive block counts".into()));
            }
            if args.sequential {
                cfg.parallelism = Parallelism::Sequential;
            }
            let rows = run_decoupling_experiment(&cfg)?;
            write_csv(&args.out, &rows, args.no_timing)?;
            let secs = start.elapsed().as_secs_f64();
            write_manifest(&args, "bench decouple", &cfg, Some(cfg.seed), &rows, secs)?;
            println!("wrote {} rows to {}", rows.len(), args.out.display());
        }
        BenchCommand::Controlize(args) => {
            let cfg: ControlizationConfig = load_config(&args.config)?;
            if cfg.trotter_steps.is_empty() || cfg.trotter_steps.contains(&0) {
                return Err(CliError::Usage("`trotter_steps` must list positive step counts".into()));
            }
            if cfg.orders.is_empty() {
                return Err(CliError::Usage("`orders` must not be empty".into()));
            }
            let rows = run_controlization_experiment(&cfg)?;
            write_csv(&args.out, &rows, args.no_timing)?;
            let secs = start.elapsed().as_secs_f64();
            write_manifest(&args, "bench controlize", &cfg, None, &rows, secs)?;
            println!("wrote {} rows to {}", rows.len(), args.out.display());
        }
    }
    Ok(())
}
