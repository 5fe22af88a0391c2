use crate::output::Report;
use crate::{ApproximatorArg, Cli, Command, Format, GenArgs, GenKind};
use balroute::arborescence::{find_arborescence, total_stretch, ArborescenceOptions};
use balroute::balance::{additive_imbalance, check_balance, imbalance_exact, BalanceCheck};
use balroute::decomposition::{cluster_directed, cluster_directed_rooted, ClusterOptions};
use balroute::generators::seeded_rng;
use balroute::graph::{read_graph, write_graph, GraphFormat};
use balroute::harness::{generate, run_experiment, ApproximatorChoice, ExperimentSpec, GeneratorSpec};
use balroute::maxflow::{max_st_flow_with, ApproxRouter, DemandRouter, ExactRouter};
use balroute::routing::{
    competitive_ratio, crude_routing, default_demand_family, find_routing, worst_case_ratio, RoutingOptions,
};
use balroute::sparsest::{sparsest_cut, SparsestCutOptions, SparsityResult};
use balroute::{volume, DirectedGraph};
use std::error::Error;
use std::path::{Path, PathBuf};

type CliResult<T> = std::result::Result<T, Box<dyn Error>>;

/// Runs the command; `Ok(false)` means it completed but a check failed.
pub fn run(cli: &Cli) -> CliResult<bool> {
    let mut report = Report::new();
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(args) => {
            let g = generate(&generator_spec(args), seed)?;
            let format = if cli.format == Format::Json {
                GraphFormat::Json
            } else {
                GraphFormat::Text
            };
            let text = write_graph(&g, format);
            match &args.output {
                Some(path) => std::fs::write(path, text).map_err(|e| with_path(path, e))?,
                None => print!("{text}"),
            }
            return Ok(true);
        }
        Command::Balance { graph, alpha, eps } => {
            let g = load(graph)?;
            let exact = imbalance_exact(&g)?;
            report
                .push("imbalance", exact.value)
                .push("additive_imbalance", additive_imbalance(&g));
            report.push("witness_cut", exact.cut.map(|c| c.vertices().collect::<Vec<_>>()));
            if let Some(alpha) = *alpha {
                match check_balance(
                    &g,
                    alpha,
                    *eps,
                    &ApproxRouter {
                        seed,
                        ..Default::default()
                    },
                )? {
                    BalanceCheck::Balanced { max_congestion, .. } => {
                        report.push("check", "balanced").push("max_congestion", max_congestion);
                    }
                    BalanceCheck::Unbalanced { cut, ratio } => {
                        report.push("check", "unbalanced").push("cut_ratio", ratio);
                        report.push("cut", cut.vertices().collect::<Vec<_>>());
                    }
                }
            }
        }
        Command::Decompose { graph, radius, rooted } => {
            let g = load(graph)?;
            let rng = &mut seeded_rng(seed);
            let p = match *rooted {
                Some(s) => cluster_directed_rooted(&g, s, *radius, rng, ClusterOptions::default())?,
                None => cluster_directed(&g, *radius, rng, ClusterOptions::default())?,
            };
            report
                .push("clusters", p.cluster_count())
                .push("cut_weight", p.cut_weight);
            report
                .push("cut_fraction", p.cut_weight / volume(&g))
                .push("max_radius", p.max_radius());
            report.push("attempts", p.attempts).push("ball_radius", p.ball_radius);
            report.push("roots", &p.roots).push("assignment", &p.assignment);
        }
        Command::Arborescence { graph, root } => {
            let g = load(graph)?;
            let t = find_arborescence(&g, *root, &mut seeded_rng(seed), ArborescenceOptions::default())?;
            report.push("root", t.root()).push("levels", t.levels());
            report
                .push("total_stretch", total_stretch(&g, &t)?)
                .push("volume", volume(&g));
            let parents: Vec<Option<usize>> = (0..g.n()).map(|v| t.parent(v)).collect();
            report
                .push("parents", parents)
                .push("root_distances", t.root_distances());
        }
        Command::Routing { graph, source } => {
            let g = load(graph)?;
            let c = find_routing(&g, *source, &mut seeded_rng(seed), RoutingOptions::default())?;
            let trees = c.routing.trees();
            report
                .push("source", source)
                .push("rounds", c.steps.len())
                .push("trees", trees.len());
            report.push("lambda_sum", trees.iter().map(|(_, l)| l).sum::<f64>());
            let lambdas: Vec<f64> = trees.iter().map(|(_, l)| *l).collect();
            report.push("lambdas", lambdas);
            let parents: Vec<Vec<Option<usize>>> = trees
                .iter()
                .map(|(t, _)| (0..g.n()).map(|v| t.parent(v)).collect())
                .collect();
            report.push("parents", parents);
        }
        Command::EvalRouting { graph, source, crude } => {
            let g = load(graph)?;
            let routing = if *crude {
                crude_routing(&g, *source)?
            } else {
                find_routing(&g, *source, &mut seeded_rng(seed), RoutingOptions::default())?.routing
            };
            let worst = worst_case_ratio(&g, &routing)?;
            let family = competitive_ratio(&g, &routing, &default_demand_family(g.n(), *source))?;
            report.push("source", source).push("trees", routing.trees().len());
            report
                .push("worst_case_ratio", worst.ratio)
                .push("worst_edge", worst.edge);
            report
                .push("worst_demand", &worst.demand.0)
                .push("pair_family_ratio", family);
        }
        Command::Maxflow {
            graph,
            source,
            sink,
            eps,
            approximator,
            flow_out,
            cut_out,
        } => {
            let g = load(graph)?;
            let choice = match approximator {
                ApproximatorArg::AllCuts => ApproximatorChoice::AllCuts,
                ApproximatorArg::Tree => ApproximatorChoice::Tree,
                ApproximatorArg::Auto => ApproximatorChoice::Auto,
            };
            let r = max_st_flow_with(&g, *source, *sink, *eps, &choice.router(seed))?;
            report.push("value", r.value).push("cut_capacity", r.cut_capacity);
            report.push("gap", r.cut_capacity / r.value);
            report.push("cut", r.cut.vertices().collect::<Vec<_>>());
            if let Some(path) = flow_out {
                let text: String = r.flow.iter().map(|x| format!("{x}\n")).collect();
                std::fs::write(path, text).map_err(|e| with_path(path, e))?;
            }
            if let Some(path) = cut_out {
                let text: String = r.cut.vertices().map(|v| format!("{v}\n")).collect();
                std::fs::write(path, text).map_err(|e| with_path(path, e))?;
            }
        }
        Command::SparsestCut {
            graph,
            phi,
            approximate,
        } => {
            let g = load(graph)?;
            let approx = ApproxRouter {
                seed,
                ..Default::default()
            };
            let router: &dyn DemandRouter = if *approximate { &approx } else { &ExactRouter };
            let options = SparsestCutOptions {
                seed,
                ..Default::default()
            };
            match sparsest_cut(&g, *phi, router, options)? {
                SparsityResult::Cut { cut, sparsity, origin } => {
                    report
                        .push("result", "cut")
                        .push("sparsity", sparsity)
                        .push("origin", format!("{origin:?}"));
                    report.push("cut", cut.vertices().collect::<Vec<_>>());
                }
                SparsityResult::Certificate { rounds, max_congestion } => {
                    report
                        .push("result", "certificate")
                        .push("rounds", rounds)
                        .push("max_congestion", max_congestion);
                }
            }
        }
        Command::Experiment { spec, output } => {
            let text = std::fs::read_to_string(spec).map_err(|e| with_path(spec, e))?;
            let mut spec: ExperimentSpec = serde_json::from_str(&text)?;
            spec.tolerance = cli.tolerance_profile;
            let result = run_experiment(&spec)?;
            let rendered = match cli.format {
                Format::Text => result.to_text(),
                Format::Json => serde_json::to_string_pretty(&result)? + "\n",
            };
            match output.clone().or(spec.output.as_ref().map(PathBuf::from)) {
                Some(path) => std::fs::write(&path, rendered).map_err(|e| with_path(&path, e))?,
                None => print!("{rendered}"),
            }
            return Ok(result.passed);
        }
    }
    print!("{}", report.render(cli.format));
    Ok(true)
}

fn generator_spec(a: &GenArgs) -> GeneratorSpec {
    match a.kind {
        GenKind::EulerianCycles => GeneratorSpec::EulerianCycles {
            n: a.n,
            cycles: a.cycles,
            max_weight: a.max_weight,
        },
        GenKind::Balanced => GeneratorSpec::Balanced {
            n: a.n,
            cycles: a.cycles,
            alpha: a.alpha,
        },
        GenKind::StronglyConnected => GeneratorSpec::StronglyConnected {
            n: a.n,
            p: a.p,
            w_min: a.w_min,
            w_max: a.w_max,
        },
        GenKind::DirectedCycle => GeneratorSpec::DirectedCycle { n: a.n },
        GenKind::LbGeneral => GeneratorSpec::LbGeneral { k: a.k },
        GenKind::LbEulerian => GeneratorSpec::LbEulerian { n: a.n },
        GenKind::MpxCounterexample => GeneratorSpec::MpxCounterexample {
            k: a.k as u32,
            star: a.star,
        },
        GenKind::PlantedCut => GeneratorSpec::PlantedCut {
            n: a.n,
            p: a.p,
            bridges: a.bridges,
        },
        GenKind::FlowResidual => GeneratorSpec::FlowResidual {
            n: a.n,
            p: a.p,
            eps: a.eps,
        },
    }
}

/// Reads a graph; `.json` files use the JSON record, anything else the edge list.
fn load(path: &Path) -> CliResult<DirectedGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| with_path(path, e))?;
    let format = if path.extension().is_some_and(|e| e == "json") {
        GraphFormat::Json
    } else {
        GraphFormat::Text
    };
    Ok(read_graph(&text, format)?)
}

fn with_path(path: &Path, e: std::io::Error) -> Box<dyn Error> {
    format!("{}: {e}", path.display()).into()
}
