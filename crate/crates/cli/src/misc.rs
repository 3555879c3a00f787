use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use oa_control::hamiltonian::{greedy_coloring, random_sparse, spectral_norm, InteractionGraph, KLocalHamiltonian};
use oa_control::protocols::{estimate_resources, Order};

use crate::error::{CliError, CliResult};
use crate::read_text;

#[derive(Args)]
#[command(group(ArgGroup::new("graph").required(true).args(["hamiltonian", "grid", "chain", "complete", "sparse"])))]
pub struct ColorArgs {
    /// Hamiltonian file.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Square lattice `ROWSxCOLS` with nearest-neighbour couplings.
    #[arg(long)]
    grid: Option<String>,
    /// Open chain of N sites.
    #[arg(long)]
    chain: Option<usize>,
    /// All-to-all couplings on N sites.
    #[arg(long)]
    complete: Option<usize>,
    /// Random sparse qubit Hamiltonian `N,TERMS,SEED`.
    #[arg(long)]
    sparse: Option<String>,
}

fn parse_grid(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("grid must look like 4x4, got {text:?}"));
    let (r, c) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}

fn parse_sparse(text: &str) -> CliResult<KLocalHamiltonian> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|w| w.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("sparse must look like N,TERMS,SEED, got {text:?}")))?;
    let [n, m, seed] = parts[..] else {
        return Err(CliError::Usage(format!("sparse must look like N,TERMS,SEED, got {text:?}")));
    };
    Ok(random_sparse(n as usize, m as usize, seed)?)
}

pub fn color(args: ColorArgs) -> CliResult<()> {
    let graph = if let Some(path) = &args.hamiltonian {
        InteractionGraph::of(&KLocalHamiltonian::parse(&read_text(path)?)?)
    } else if let Some(g) = &args.grid {
        let (r, c) = parse_grid(g)?;
        InteractionGraph::grid(r, c)
    } else if let Some(n) = args.chain {
        InteractionGraph::path(n)
    } else if let Some(n) = args.complete {
        InteractionGraph::complete(n)
    } else if let Some(s) = &args.sparse {
        InteractionGraph::of(&parse_sparse(s)?)
    } else {
        unreachable!("clap enforces one graph source")
    };
    let coloring = greedy_coloring(&graph);
    println!("qudits {}", graph.num_vertices());
    println!("edges {}", graph.num_edges());
    println!("colors {}", coloring.count);
    let colors: Vec<String> = coloring.colors.iter().map(|c| (c + 1).to_string()).collect();
    println!("assignment {}", colors.join(","));
    println!("columns needed {} of {}", coloring.count, graph.num_vertices());
    Ok(())
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    First,
    Second,
}

#[derive(Args)]
#[command(group(ArgGroup::new("norm_source").required(true).args(["norm", "hamiltonian"])))]
pub struct ResourcesArgs {
    /// Rows N of the decoupling scheme.
    #[arg(long)]
    runs: usize,
    /// Evolution time.
    #[arg(long)]
    time: f64,
    /// Spectral norm of H.
    #[arg(long)]
    norm: Option<f64>,
    /// Compute the norm from a Hamiltonian file instead.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Target error.
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value = "first")]
    order: OrderArg,
    /// Prefactor of the error bound.
    #[arg(long, default_value_t = 1.0)]
    constant: f64,
}

pub fn resources(args: ResourcesArgs) -> CliResult<()> {
    let norm = match (&args.hamiltonian, args.norm) {
        (Some(path), _) => spectral_norm(&KLocalHamiltonian::parse(&read_text(path)?)?)?,
        (None, Some(v)) => v,
        (None, None) => unreachable!("clap enforces a norm source"),
    };
    let order = match args.order {
        OrderArg::First => Order::First,
        OrderArg::Second => Order::Second,
    };
    let r = estimate_resources(args.runs, args.time, norm, args.eps, order, args.constant)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    println!("norm {norm}");
    println!("trotter_steps {}", r.trotter_steps);
    println!("controlled_ops {}", r.controlled_ops);
    Ok(())
}
