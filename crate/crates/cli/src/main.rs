//! `balroute`: generate instances, run the algorithms on edge-list graphs and
//! drive seeded experiments.

mod commands;
mod output;

use balroute::harness::ToleranceProfile;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "balroute",
    version,
    about = "Routing and cut algorithms for nearly balanced directed graphs"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Multiplier on empirical experiment limits: strict, standard or loose.
    #[arg(long, global = true, default_value = "standard")]
    tolerance_profile: ToleranceProfile,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance and print it as an edge list (or JSON).
    Gen(GenArgs),
    /// Exact imbalance, optionally with the approximate balance check.
    Balance {
        graph: PathBuf,
        /// Also run the approximate check against this threshold.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Partition into clusters of bounded radius.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        radius: f64,
        /// Keep a ball around this vertex in one cluster.
        #[arg(long)]
        rooted: Option<usize>,
    },
    /// Low-stretch arborescence.
    Arborescence {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Single-source oblivious routing as a convex combination of arborescences.
    Routing {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        source: usize,
    },
    /// Worst-case competitive ratio of the oblivious routing built from `--seed`.
    EvalRouting {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        source: usize,
        /// Compare with the widest-path routing instead.
        #[arg(long)]
        crude: bool,
    },
    /// Approximate maximum flow and minimum cut.
    Maxflow {
        graph: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        sink: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = ApproximatorArg::Auto)]
        approximator: ApproximatorArg,
        /// Write the flow, one value per edge, to this file.
        #[arg(long)]
        flow_out: Option<PathBuf>,
        /// Write the source side of the cut, one vertex per line, to this file.
        #[arg(long)]
        cut_out: Option<PathBuf>,
    },
    /// Cut of sparsity at most `--phi`, or evidence that none was found.
    SparsestCut {
        graph: PathBuf,
        #[arg(long)]
        phi: f64,
        /// Answer flow queries with the approximate solver instead of the exact one.
        #[arg(long)]
        approximate: bool,
    },
    /// Run a JSON experiment spec; exits with status 1 if a check fails.
    Experiment {
        spec: PathBuf,
        /// Write the report here instead of the spec's output path or stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ApproximatorArg {
    AllCuts,
    Tree,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    EulerianCycles,
    Balanced,
    StronglyConnected,
    DirectedCycle,
    LbGeneral,
    LbEulerian,
    MpxCounterexample,
    PlantedCut,
    FlowResidual,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    cycles: usize,
    #[arg(long, default_value_t = 4.0)]
    max_weight: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    w_min: f64,
    #[arg(long, default_value_t = 4.0)]
    w_max: f64,
    #[arg(long, default_value_t = 1)]
    bridges: usize,
    #[arg(long, default_value_t = 1024)]
    star: usize,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
