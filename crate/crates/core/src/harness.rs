//! Named instance generators and seeded experiments with structured reports.
//!
//! An experiment runs one algorithm on one generated instance per seed and
//! reports per-seed metrics, aggregates and checks. Identical specs produce
//! identical reports; seeds run in parallel but results are assembled in seed
//! order.

use crate::arborescence::{find_arborescence, total_stretch, ArborescenceOptions};
use crate::balance::{additive_imbalance, check_balance, imbalance_exact};
use crate::decomposition::{cluster_directed, star_cycle_instance, ClusterOptions};
use crate::error::{Error, Result};
use crate::generators::{
    approximate_flow_residual, directed_cycle, planted_cut, random_balanced, random_eulerian,
    random_strongly_connected, seeded_rng,
};
use crate::graph::{volume, DirectedGraph};
use crate::maxflow::{max_st_flow_with, ApproxRouter, ApproximatorKind, ExactRouter};
use crate::oracles::exact_max_flow;
use crate::routing::{find_routing, gen_lowerbound_eulerian, gen_lowerbound_general, worst_case_ratio, RoutingOptions};
use crate::sparsest::{sparsest_cut, SparsestCutOptions, SparsityResult};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Instance families, addressed by a kebab-case `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// Sum of random cycles with weights in `[1, max_weight]`.
    EulerianCycles {
        n: usize,
        cycles: usize,
        max_weight: f64,
    },
    /// Eulerian instance with every weight scaled by a factor in `[1, alpha]`.
    Balanced {
        n: usize,
        cycles: usize,
        alpha: f64,
    },
    StronglyConnected {
        n: usize,
        p: f64,
        w_min: f64,
        w_max: f64,
    },
    DirectedCycle {
        n: usize,
    },
    /// Biclique with a shared detour, `2k + 2` vertices.
    LbGeneral {
        k: usize,
    },
    /// Two opposite cycles, the reverse one heavier.
    LbEulerian {
        n: usize,
    },
    /// Cycle of length `3^k` with a bidirected star of `star` leaves.
    MpxCounterexample {
        k: u32,
        star: usize,
    },
    /// Two unit-weight halves joined by `bridges` bidirected edges.
    PlantedCut {
        n: usize,
        p: f64,
        bridges: usize,
    },
    /// Residual graph of a `(1 - eps)`-scaled maximum flow.
    FlowResidual {
        n: usize,
        p: f64,
        eps: f64,
    },
}

/// Builds the instance for `seed`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<DirectedGraph> {
    let rng = &mut seeded_rng(seed);
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(what.into()))
        }
    };
    match *spec {
        GeneratorSpec::EulerianCycles { n, cycles, max_weight } => {
            need(
                n >= 2 && max_weight >= 1.0,
                "eulerian-cycles needs n >= 2 and max_weight >= 1",
            )?;
            Ok(random_eulerian(n, cycles, max_weight, rng))
        }
        GeneratorSpec::Balanced { n, cycles, alpha } => {
            need(n >= 2 && alpha >= 1.0, "balanced needs n >= 2 and alpha >= 1")?;
            Ok(random_balanced(n, cycles, alpha, rng))
        }
        GeneratorSpec::StronglyConnected { n, p, w_min, w_max } => {
            need(
                n >= 1 && (0.0..=1.0).contains(&p),
                "strongly-connected needs n >= 1 and p in [0, 1]",
            )?;
            need(
                w_min > 0.0 && w_min <= w_max,
                "strongly-connected needs 0 < w_min <= w_max",
            )?;
            Ok(random_strongly_connected(n, p, w_min, w_max, rng))
        }
        GeneratorSpec::DirectedCycle { n } => {
            need(n >= 2, "directed-cycle needs n >= 2")?;
            Ok(directed_cycle(n))
        }
        GeneratorSpec::LbGeneral { k } => gen_lowerbound_general(k),
        GeneratorSpec::LbEulerian { n } => gen_lowerbound_eulerian(n),
        GeneratorSpec::MpxCounterexample { k, star } => Ok(star_cycle_instance(k, star)?.graph),
        GeneratorSpec::PlantedCut { n, p, bridges } => {
            need(
                n >= 4 && n.is_multiple_of(2) && (0.0..=1.0).contains(&p),
                "planted-cut needs even n >= 4 and p in [0, 1]",
            )?;
            Ok(planted_cut(n, p, bridges, rng).0)
        }
        GeneratorSpec::FlowResidual { n, p, eps } => approximate_flow_residual(n, p, eps, rng),
    }
}

/// `ln^3 n / ln ln n`, with `ln ln n` floored at 1 so small instances are not inflated.
pub fn polylog_scale(n: usize) -> f64 {
    let ln = (n.max(2) as f64).ln();
    ln.powi(3) / ln.ln().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproximatorChoice {
    AllCuts,
    Tree,
    Auto,
}

impl ApproximatorChoice {
    pub fn router(self, seed: u64) -> ApproxRouter {
        let kind = match self {
            ApproximatorChoice::AllCuts => ApproximatorKind::AllCuts,
            ApproximatorChoice::Tree => ApproximatorKind::Trees,
            ApproximatorChoice::Auto => ApproximatorKind::Auto(12),
        };
        ApproxRouter {
            kind,
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum AlgorithmSpec {
    /// Exact imbalance and additive imbalance.
    Balance,
    /// Approximate balance certification, compared with the exact imbalance.
    CheckBalance { alpha: f64, eps: f64 },
    /// Directed low-radius clustering at radius `r`.
    Decomposition { r: f64 },
    /// Low-stretch arborescence rooted at vertex 0.
    Arborescence,
    /// Oblivious routing from vertex 0 and its exact worst-case ratio.
    Routing,
    /// Approximate maximum flow from vertex 0 to vertex `n - 1`.
    Maxflow { eps: f64, approximator: ApproximatorChoice },
    /// Sparsest cut at threshold `phi`, flow queries answered exactly.
    SparsestCut { phi: f64 },
}

impl AlgorithmSpec {
    /// Metric columns, in report order.
    pub fn metrics(&self) -> &'static [&'static str] {
        match self {
            AlgorithmSpec::Balance => &["imbalance", "additive_imbalance"],
            AlgorithmSpec::CheckBalance { .. } => &["balanced", "imbalance", "inconsistent"],
            AlgorithmSpec::Decomposition { .. } => &["clusters", "cut_weight", "cut_constant", "radius_ratio"],
            AlgorithmSpec::Arborescence => &["stretch", "stretch_constant", "depth"],
            AlgorithmSpec::Routing => &["trees", "rounds", "worst_ratio", "ratio_constant", "lambda_error"],
            AlgorithmSpec::Maxflow { .. } => &["value", "exact", "gap", "cut_gap"],
            AlgorithmSpec::SparsestCut { .. } => &["found", "sparsity", "violation"],
        }
    }

    /// Metric whose mean is reported as the fitted constant.
    fn fitted_metric(&self) -> Option<&'static str> {
        match self {
            AlgorithmSpec::Decomposition { .. } => Some("cut_constant"),
            AlgorithmSpec::Arborescence => Some("stretch_constant"),
            AlgorithmSpec::Routing => Some("ratio_constant"),
            _ => None,
        }
    }

    /// Limits that hold on every run regardless of the tolerance profile.
    fn hard_limits(&self) -> Vec<(&'static str, f64)> {
        match *self {
            AlgorithmSpec::CheckBalance { .. } => vec![("inconsistent", 0.0)],
            AlgorithmSpec::Decomposition { .. } => vec![("radius_ratio", 1.0 + 1e-9)],
            AlgorithmSpec::Routing => vec![("lambda_error", 1e-9)],
            AlgorithmSpec::Maxflow { eps, .. } => vec![("gap", 1.0 + eps), ("cut_gap", 1.0 + eps)],
            AlgorithmSpec::SparsestCut { .. } => vec![("violation", 0.0)],
            _ => Vec::new(),
        }
    }

    fn run(&self, g: &DirectedGraph, seed: u64) -> Result<Vec<f64>> {
        let n = g.n();
        let ln_n = (n.max(2) as f64).ln();
        match *self {
            AlgorithmSpec::Balance => Ok(vec![imbalance_exact(g)?.value, additive_imbalance(g)]),
            AlgorithmSpec::CheckBalance { alpha, eps } => {
                let exact = imbalance_exact(g)?.value;
                let balanced = check_balance(
                    g,
                    alpha,
                    eps,
                    &ApproxRouter {
                        seed,
                        ..Default::default()
                    },
                )?
                .is_balanced();
                let sound = if balanced {
                    exact <= alpha * (1.0 + 1e-9)
                } else {
                    exact > (1.0 - eps) * alpha * (1.0 - 1e-9)
                };
                Ok(vec![balanced as u8 as f64, exact, (!sound) as u8 as f64])
            }
            AlgorithmSpec::Decomposition { r } => {
                let p = cluster_directed(g, r, &mut seeded_rng(seed), ClusterOptions::default())?;
                let constant = p.cut_weight * r / (volume(g) * ln_n);
                Ok(vec![
                    p.cluster_count() as f64,
                    p.cut_weight,
                    constant,
                    p.max_radius() / r,
                ])
            }
            AlgorithmSpec::Arborescence => {
                let t = find_arborescence(g, 0, &mut seeded_rng(seed), ArborescenceOptions::default())?;
                let stretch = total_stretch(g, &t)?;
                Ok(vec![
                    stretch,
                    stretch / (volume(g) * polylog_scale(n)),
                    t.levels() as f64,
                ])
            }
            AlgorithmSpec::Routing => {
                let c = find_routing(g, 0, &mut seeded_rng(seed), RoutingOptions::default())?;
                let lambda: f64 = c.routing.trees().iter().map(|(_, l)| l).sum();
                let worst = worst_case_ratio(g, &c.routing)?.ratio;
                Ok(vec![
                    c.routing.trees().len() as f64,
                    c.steps.len() as f64,
                    worst,
                    worst / polylog_scale(n),
                    (lambda - 1.0).abs(),
                ])
            }
            AlgorithmSpec::Maxflow { eps, approximator } => {
                let t = n - 1;
                let approx = max_st_flow_with(g, 0, t, eps, &approximator.router(seed))?;
                let exact = exact_max_flow(g, 0, t)?.value;
                Ok(vec![
                    approx.value,
                    exact,
                    exact / approx.value,
                    approx.cut_capacity / exact,
                ])
            }
            AlgorithmSpec::SparsestCut { phi } => {
                let options = SparsestCutOptions {
                    seed,
                    ..Default::default()
                };
                Ok(match sparsest_cut(g, phi, &ExactRouter, options)? {
                    SparsityResult::Cut { sparsity, .. } => vec![1.0, sparsity, (sparsity - phi).max(0.0)],
                    SparsityResult::Certificate { .. } => vec![0.0, f64::NAN, 0.0],
                })
            }
        }
    }
}

/// Multiplier applied to the spec's empirical limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToleranceProfile {
    /// Limits as given.
    Strict,
    /// Limits times 1.25.
    #[default]
    Standard,
    /// Limits times 2.
    Loose,
}

impl ToleranceProfile {
    pub fn factor(self) -> f64 {
        match self {
            ToleranceProfile::Strict => 1.0,
            ToleranceProfile::Standard => 1.25,
            ToleranceProfile::Loose => 2.0,
        }
    }
}

impl std::str::FromStr for ToleranceProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ToleranceProfile::Strict),
            "standard" => Ok(ToleranceProfile::Standard),
            "loose" => Ok(ToleranceProfile::Loose),
            other => Err(Error::InvalidParameter(format!("unknown tolerance profile {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub generator: GeneratorSpec,
    pub algorithm: AlgorithmSpec,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub tolerance: ToleranceProfile,
    /// Empirical limits on metric means, scaled by the tolerance profile.
    #[serde(default)]
    pub limits: Vec<(String, f64)>,
    /// Where the caller should write the report; not read by `run_experiment`.
    #[serde(default)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub values: Vec<f64>,
}

/// Statistics of one metric over the seeds where it is defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub metric: String,
    pub count: usize,
    pub mean: f64,
    /// Population variance.
    pub variance: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    Mean,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub metric: String,
    pub statistic: Statistic,
    pub observed: f64,
    pub limit: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub metrics: Vec<String>,
    pub runs: Vec<SeedRun>,
    pub aggregates: Vec<Aggregate>,
    /// Mean of the normalized metric, for algorithms that have one.
    pub fitted_constant: Option<f64>,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl ExperimentReport {
    /// Whitespace-separated columns, one row per seed; everything else on
    /// `#`-prefixed lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# experiment {}", self.name);
        let _ = writeln!(out, "# seed {}", self.metrics.join(" "));
        for run in &self.runs {
            let cols: Vec<String> = run.values.iter().map(|v| format!("{v}")).collect();
            let _ = writeln!(out, "{} {}", run.seed, cols.join(" "));
        }
        for a in &self.aggregates {
            let _ = writeln!(
                out,
                "# aggregate {} count={} mean={} variance={} min={} max={}",
                a.metric, a.count, a.mean, a.variance, a.min, a.max
            );
        }
        if let Some(c) = self.fitted_constant {
            let _ = writeln!(out, "# fitted_constant {c}");
        }
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let stat = match c.statistic {
                Statistic::Mean => "mean",
                Statistic::Max => "max",
            };
            let _ = writeln!(
                out,
                "# check {} {stat} {} <= {} {verdict}",
                c.metric, c.observed, c.limit
            );
        }
        let _ = writeln!(out, "# result {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

/// Runs the spec on every seed. Seeds are spread over the available threads.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if spec.seeds.is_empty() {
        return Err(Error::InvalidParameter("experiment needs at least one seed".into()));
    }
    let metrics = spec.algorithm.metrics();
    for (name, _) in &spec.limits {
        if !metrics.contains(&name.as_str()) {
            return Err(Error::InvalidParameter(format!("limit on unknown metric {name:?}")));
        }
    }
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(spec.seeds.len());
    let chunk = spec.seeds.len().div_ceil(threads);
    let results: Vec<Result<Vec<f64>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = spec
            .seeds
            .chunks(chunk)
            .map(|seeds| {
                scope.spawn(move || {
                    seeds
                        .iter()
                        .map(|&seed| {
                            let g = generate(&spec.generator, seed)?;
                            spec.algorithm.run(&g, seed)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("experiment worker panicked"))
            .collect()
    });
    let mut runs = Vec::with_capacity(results.len());
    for (&seed, result) in spec.seeds.iter().zip(results) {
        let values = result.map_err(|e| Error::InvalidParameter(format!("{} seed {seed}: {e}", spec.name)))?;
        runs.push(SeedRun { seed, values });
    }
    let aggregates: Vec<Aggregate> = metrics
        .iter()
        .enumerate()
        .map(|(i, &metric)| aggregate(metric, runs.iter().map(|r| r.values[i])))
        .collect();
    let find = |metric: &str| aggregates.iter().find(|a| a.metric == metric).expect("known metric");
    let mut checks = Vec::new();
    for (metric, limit) in spec.algorithm.hard_limits() {
        let observed = find(metric).max;
        checks.push(CheckOutcome {
            metric: metric.into(),
            statistic: Statistic::Max,
            observed,
            limit,
            passed: observed <= limit,
        });
    }
    for (metric, limit) in &spec.limits {
        let observed = find(metric).mean;
        let limit = limit * spec.tolerance.factor();
        checks.push(CheckOutcome {
            metric: metric.clone(),
            statistic: Statistic::Mean,
            observed,
            limit,
            passed: observed <= limit,
        });
    }
    Ok(ExperimentReport {
        name: spec.name.clone(),
        metrics: metrics.iter().map(|m| m.to_string()).collect(),
        fitted_constant: spec.algorithm.fitted_metric().map(|m| find(m).mean),
        passed: checks.iter().all(|c| c.passed),
        runs,
        aggregates,
        checks,
    })
}

fn aggregate(metric: &str, values: impl Iterator<Item = f64>) -> Aggregate {
    let xs: Vec<f64> = values.filter(|v| !v.is_nan()).collect();
    let count = xs.len();
    if count == 0 {
        return Aggregate {
            metric: metric.into(),
            count,
            mean: f64::NAN,
            variance: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
        };
    }
    let mean = xs.iter().sum::<f64>() / count as f64;
    let variance = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / count as f64;
    Aggregate {
        metric: metric.into(),
        count,
        mean,
        variance,
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}
