//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p balroute --test acceptance`. Numeric arguments
//! select criteria, e.g. `cargo test -p balroute --test acceptance -- 4 9`.
//! Empirical constants are compared against the stored baselines below times
//! the tolerance multiplier; every other check is exact up to the stated
//! floating-point slack.

use balroute::arborescence::{find_arborescence, total_stretch, tree_load, ArborescenceOptions};
use balroute::balance::{check_balance, cut_ratio, imbalance_by_enumeration, imbalance_exact, BalanceCheck};
use balroute::composite::{convergence_bound, minimize, BoxQuadratic, CompositeProblem};
use balroute::decomposition::{cluster_directed, cycle_cut_statistic, star_cycle_instance, ClusterOptions, Partition};
use balroute::generators::{
    approximate_flow_residual, derive_seed, planted_cut, random_balanced, random_demand, random_eulerian,
    random_strongly_connected, seeded_rng,
};
use balroute::graph::dijkstra;
use balroute::harness::polylog_scale;
use balroute::maxflow::{
    almost_route_directed, fast_almost_route, max_st_flow_with, AlmostRoute, AlmostRouteOptions, ApproxRouter,
    ApproximatorKind, ExactRouter,
};
use balroute::oracles::{all_cuts_congestion_approximator, exact_max_flow, exact_min_congestion};
use balroute::routing::{
    find_routing, lowerbound_certificate, worst_case_ratio, LowerBoundInstance, RandomPathRouting, RoutingOptions,
};
use balroute::sparsest::{sparsest_cut, sparsity, SparsestCutOptions, SparsityResult};
use balroute::{incidence_apply, volume, Cut, Demand, DirectedGraph};
use rand::Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Allowed growth of a fitted constant over its stored baseline.
const BASELINE_TOLERANCE: f64 = 1.25;
/// Mean of `cut_weight * r / (vol ln n)`, n = 200 Eulerian, r = 40, 100 runs.
const CUT_CONSTANT_BASELINE: f64 = 3.038371529424835;
/// Largest normalized cycle statistic over 10 Eulerian graphs, n = 200, r = 40.
const CYCLE_CONSTANT_BASELINE: f64 = 3.5547134490115946;
/// Mean of `total_stretch / (vol ln^3 n / ln ln n)`, n = 256 Eulerian, 20 runs.
const STRETCH_CONSTANT_BASELINE: f64 = 0.035231812303527205;
/// Largest `ratio / (ln^3 n / ln ln n)` over 30 Eulerian graphs, n <= 64.
const ROUTING_CONSTANT_BASELINE: f64 = 0.11476558323935358;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Outcome { passed, detail }
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion {
            id: 1,
            name: "balance equivalences",
            budget: secs(60),
            run: balance_equivalences,
        },
        Criterion {
            id: 2,
            name: "flow symmetry",
            budget: secs(30),
            run: flow_symmetry,
        },
        Criterion {
            id: 3,
            name: "residual balance",
            budget: secs(60),
            run: residual_balance,
        },
        Criterion {
            id: 4,
            name: "decomposition",
            budget: secs(300),
            run: decomposition,
        },
        Criterion {
            id: 5,
            name: "cycle cut bound",
            budget: secs(120),
            run: cycle_cut,
        },
        Criterion {
            id: 6,
            name: "arborescence",
            budget: secs(300),
            run: arborescence,
        },
        Criterion {
            id: 7,
            name: "oblivious routing",
            budget: secs(600),
            run: oblivious_routing,
        },
        Criterion {
            id: 8,
            name: "routing lower bounds",
            budget: secs(120),
            run: lower_bounds,
        },
        Criterion {
            id: 9,
            name: "max flow",
            budget: secs(600),
            run: max_flow,
        },
        Criterion {
            id: 10,
            name: "composite minimization",
            budget: secs(10),
            run: composite,
        },
        Criterion {
            id: 11,
            name: "balance certification",
            budget: secs(300),
            run: balance_certification,
        },
        Criterion {
            id: 12,
            name: "sparsest cut",
            budget: secs(300),
            run: sparsest,
        },
    ];
    let mut failures = 0;
    for c in criteria
        .iter()
        .filter(|c| selected.is_empty() || selected.contains(&c.id))
    {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let passed = outcome.passed && in_time;
        failures += usize::from(!passed);
        println!(
            "criterion {} ({}): {} {} [{:.1} s of {} s{}]",
            c.id,
            c.name,
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if in_time { "" } else { ", over budget" },
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn small_graph(seed: u64) -> DirectedGraph {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(2..=12);
    random_strongly_connected(n, 0.35, 0.5, 4.0, &mut rng)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn balance_equivalences() -> Outcome {
    let (mut worst_gap, mut bad_circulations) = (0.0f64, 0);
    for s in 0..500 {
        let g = small_graph(derive_seed(100, s));
        let exact = imbalance_exact(&g).expect("strongly connected");
        worst_gap = worst_gap.max(relative_gap(exact.value, imbalance_by_enumeration(&g)));
        let routed = incidence_apply(&g, &exact.circulation).expect("lengths match");
        let conserved = routed.iter().all(|x| x.abs() <= 1e-7 * g.total_weight());
        let within = g.edges().iter().zip(exact.circulation.iter()).all(|(e, &f)| {
            let c = f / e.weight;
            c >= 1.0 - 1e-9 && c <= exact.value + 1e-7
        });
        bad_circulations += usize::from(!(conserved && within));
    }
    Outcome::new(
        worst_gap <= 1e-7 && bad_circulations == 0,
        format!("500 graphs, worst relative gap {worst_gap:.2e}, bad circulations {bad_circulations}"),
    )
}

fn flow_symmetry() -> Outcome {
    let (mut violations, mut worst) = (0, f64::NEG_INFINITY);
    for s in 0..200 {
        let g = small_graph(derive_seed(200, s));
        let b = random_demand(g.n(), &mut seeded_rng(derive_seed(201, s)));
        let bal = imbalance_exact(&g).expect("strongly connected").value;
        let forward = exact_min_congestion(&g, &b).expect("routable").value;
        let backward = exact_min_congestion(&g, &b.negated()).expect("routable").value;
        let excess = backward - bal * forward;
        worst = worst.max(excess);
        violations += usize::from(excess > 1e-7);
    }
    Outcome::new(
        violations == 0,
        format!("200 pairs, max OPT(-b) - bal OPT(b) = {worst:.3e}, violations {violations}"),
    )
}

fn residual_balance() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (i, eps) in [0.5, 0.25, 0.125].into_iter().enumerate() {
        let limit = 2.0 / eps - 1.0 + 1e-6;
        let mut worst = 0.0f64;
        for s in 0..50 {
            let mut rng = seeded_rng(derive_seed(300 + i as u64, s));
            let n = rng.random_range(4..=10);
            let g = approximate_flow_residual(n, 0.4, eps, &mut rng).expect("valid residual instance");
            worst = worst.max(imbalance_exact(&g).expect("strongly connected").value);
        }
        passed &= worst <= limit;
        parts.push(format!("eps {eps}: max bal {worst:.4} (limit {:.4})", limit - 1e-6));
    }
    Outcome::new(passed, parts.join(", "))
}

/// Largest distance from the cluster root to a member, inside the cluster.
fn realized_radius(g: &DirectedGraph, p: &Partition, cluster: usize) -> f64 {
    let members = p.members(cluster);
    let sub = g.induced_subgraph(&members);
    let root = members
        .iter()
        .position(|&v| v == p.roots[cluster])
        .expect("root lies in its cluster");
    let sp = dijkstra(&sub.graph, root, &sub.graph.lengths());
    sp.dist.iter().copied().fold(0.0, f64::max)
}

fn decomposition() -> Outcome {
    let (mut violations, mut errors) = (0, 0);
    for s in 0..1000 {
        let mut rng = seeded_rng(derive_seed(402, s));
        let n = rng.random_range(5..=60);
        let base = random_strongly_connected(n, 0.15, 0.5, 4.0, &mut rng);
        let lengths: Vec<f64> = (0..base.m()).map(|_| rng.random_range(0.1..3.0)).collect();
        let g = base.with_lengths(&lengths).expect("positive lengths");
        let r = rng.random_range(0.5..10.0);
        match cluster_directed(&g, r, &mut rng, ClusterOptions::default()) {
            Ok(p) => {
                let ok = (0..p.cluster_count()).all(|c| realized_radius(&g, &p, c) <= r);
                violations += usize::from(!ok);
            }
            Err(_) => errors += 1,
        }
    }
    let n = 200;
    let r = 40.0;
    let mut total = 0.0;
    for s in 0..100 {
        let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(derive_seed(400, s)));
        let p = cluster_directed(&g, r, &mut seeded_rng(derive_seed(401, s)), ClusterOptions::default())
            .expect("decomposition succeeds");
        total += p.cut_weight * r / (volume(&g) * (n as f64).ln());
    }
    let constant = total / 100.0;
    let limit = CUT_CONSTANT_BASELINE * BASELINE_TOLERANCE;
    Outcome::new(
        violations == 0 && errors == 0 && constant <= limit,
        format!("1000 runs, radius violations {violations}, errors {errors}; C1 = {constant:.4} (limit {limit:.4})"),
    )
}

fn cycle_cut() -> Outcome {
    let n = 200;
    let mut worst = 0.0f64;
    for s in 0..10 {
        let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(derive_seed(500, s)));
        let cycle: Vec<usize> = (0..n).collect();
        let c = cycle_cut_statistic(&g, 40.0, &cycle, 100, derive_seed(501, s), ClusterOptions::default())
            .expect("valid cycle");
        worst = worst.max(c);
    }
    let limit = CYCLE_CONSTANT_BASELINE * BASELINE_TOLERANCE;

    let inst = star_cycle_instance(3, 1 << 10).expect("valid instance");
    let trials = 1000;
    let mut cut = 0;
    for s in 0..trials {
        let p = cluster_directed(
            &inst.graph,
            inst.radius,
            &mut seeded_rng(derive_seed(502, s)),
            ClusterOptions::default(),
        )
        .expect("decomposition succeeds");
        cut += usize::from(p.is_cut(&inst.graph, inst.entry_edge));
    }
    let probability = cut as f64 / trials as f64;
    let star_constant = cycle_cut_statistic(
        &inst.graph,
        inst.radius,
        &inst.cycle,
        2000,
        503,
        ClusterOptions::default(),
    )
    .expect("valid cycle");
    Outcome::new(
        worst <= limit && probability > 0.5 && star_constant <= 40.0,
        format!(
            "cycle constant {worst:.4} (limit {limit:.4}); star-cycle entry edge cut in {probability:.3} \
             of {trials}; star-cycle constant {star_constant:.4} (limit 40)"
        ),
    )
}

fn arborescence() -> Outcome {
    let (mut invalid, mut worst_identity) = (0, 0.0f64);
    for s in 0..500 {
        let mut rng = seeded_rng(derive_seed(602, s));
        let n = rng.random_range(2..=64);
        let base = random_eulerian(n, n / 2, 4.0, &mut rng);
        let lengths: Vec<f64> = (0..base.m()).map(|_| rng.random_range(0.1..3.0)).collect();
        let g = base.with_lengths(&lengths).expect("positive lengths");
        let root = rng.random_range(0..n);
        let t = match find_arborescence(&g, root, &mut rng, ArborescenceOptions::default()) {
            Ok(t) => t,
            Err(_) => {
                invalid += 1;
                continue;
            }
        };
        let spanning = t.n() == n && t.root() == root && t.order().len() == n && t.arc(root).is_none();
        let parents_ok = (0..n).filter(|&v| v != root).all(|v| t.arc(v).is_some());
        invalid += usize::from(!(spanning && parents_ok && t.validate(&g).is_ok()));
        let load = tree_load(&g, &t).expect("sizes match");
        let by_load: f64 = (0..n).filter_map(|v| t.arc(v).map(|a| load[v] * a.length)).sum();
        worst_identity = worst_identity.max(relative_gap(by_load, total_stretch(&g, &t).expect("sizes match")));
    }
    let n = 256;
    let mut total = 0.0;
    for s in 0..20 {
        let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(derive_seed(600, s)));
        let t = find_arborescence(
            &g,
            0,
            &mut seeded_rng(derive_seed(601, s)),
            ArborescenceOptions::default(),
        )
        .expect("tree exists");
        total += total_stretch(&g, &t).expect("sizes match") / (volume(&g) * polylog_scale(n));
    }
    let constant = total / 20.0;
    let limit = STRETCH_CONSTANT_BASELINE * BASELINE_TOLERANCE;
    Outcome::new(
        invalid == 0 && worst_identity <= 1e-9 && constant <= limit,
        format!(
            "500 runs, invalid {invalid}, stretch/load identity gap {worst_identity:.2e}; \
             C2 = {constant:.5} (limit {limit:.5})"
        ),
    )
}

fn oblivious_routing() -> Outcome {
    let sizes = [16usize, 24, 32, 40, 48, 64];
    let results: Vec<(f64, f64)> = (0..30u64)
        .map(|s| {
            let n = sizes[s as usize % sizes.len()];
            let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(derive_seed(700, s)));
            let c = find_routing(&g, 0, &mut seeded_rng(derive_seed(701, s)), RoutingOptions::default())
                .expect("routing exists");
            let ratio = worst_case_ratio(&g, &c.routing).expect("sizes match").ratio;
            ((c.routing.weight_sum() - 1.0).abs(), ratio / polylog_scale(n))
        })
        .collect();
    let lambda_error = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let constant = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let limit = ROUTING_CONSTANT_BASELINE * BASELINE_TOLERANCE;
    Outcome::new(
        lambda_error <= 1e-9 && constant <= limit,
        format!("30 graphs, max |sum lambda - 1| {lambda_error:.2e}; ratio constant {constant:.4} (limit {limit:.4})"),
    )
}

fn lower_bounds() -> Outcome {
    let instances = [2, 4, 8]
        .map(|k| LowerBoundInstance::General { k })
        .into_iter()
        .chain([9, 16, 25].map(|n| LowerBoundInstance::Eulerian { n }));
    let mut passed = true;
    let mut parts = Vec::new();
    for inst in instances {
        let mut lowest = f64::INFINITY;
        for seed in 0..20 {
            let routing = RandomPathRouting { seed, paths: 3 };
            let cert = lowerbound_certificate(&routing, &inst).expect("certificate computes");
            lowest = lowest.min(cert.bound);
        }
        passed &= lowest >= inst.guaranteed_bound();
        let label = match inst {
            LowerBoundInstance::General { k } => format!("k={k}"),
            LowerBoundInstance::Eulerian { n } => format!("n={n}"),
        };
        parts.push(format!("{label}: {lowest:.3} >= {:.3}", inst.guaranteed_bound()));
    }
    Outcome::new(passed, parts.join(", "))
}

#[derive(Default)]
struct SolverRecord {
    runs: usize,
    certificate_failures: usize,
    decrease_failures: usize,
    /// Smallest observed decrease over the guaranteed one.
    worst_decrease_ratio: f64,
}

impl SolverRecord {
    fn observe(&mut self, r: &AlmostRoute, eps: f64) {
        self.runs += 1;
        self.certificate_failures += usize::from(r.certificate_ratio() > (1.0 + eps) * (1.0 + 1e-9));
        if r.iterations > 0 {
            let ratio = r.min_decrease / r.required_decrease;
            self.worst_decrease_ratio = self.worst_decrease_ratio.min(ratio);
            self.decrease_failures += usize::from(ratio < 1.0 - 1e-9);
        }
    }
}

fn max_flow() -> Outcome {
    let options = AlmostRouteOptions::default();
    let router = ApproxRouter {
        kind: ApproximatorKind::AllCuts,
        ..Default::default()
    };
    let mut record = SolverRecord {
        worst_decrease_ratio: f64::INFINITY,
        ..Default::default()
    };
    let mut value_failures = 0;
    let (mut polish_wins, mut polish_runs) = (0, 0);
    for (i, eps) in [0.5, 0.25, 0.1].into_iter().enumerate() {
        for s in 0..100 {
            let mut rng = seeded_rng(derive_seed(900 + i as u64, s));
            let n = rng.random_range(2..=12);
            let g = random_balanced(n, n, 2.0, &mut rng);
            let (src, sink) = (0, n - 1);
            let exact = exact_max_flow(&g, src, sink).expect("valid terminals").value;
            let r = max_st_flow_with(&g, src, sink, eps, &router).expect("flow computes");
            let within = r.value <= exact * (1.0 + 1e-9) && r.value * (1.0 + eps) >= exact * (1.0 - 1e-12);
            value_failures += usize::from(!within);

            let approx = all_cuts_congestion_approximator(&g).expect("small graph");
            let unit = Demand::unit(n, src, sink);
            let cold = almost_route_directed(&g, &approx, &unit, eps, None, options).expect("solver terminates");
            record.observe(&cold, eps);
            let fast = fast_almost_route(&g, &approx, &unit, eps, options).expect("solver terminates");
            record.observe(&fast.result, eps);
            if eps == 0.1 {
                polish_runs += 1;
                polish_wins += usize::from(fast.polish_iterations < cold.iterations);
            }
        }
    }
    let polish_share = polish_wins as f64 / polish_runs as f64;
    Outcome::new(
        record.certificate_failures == 0 && record.decrease_failures == 0 && value_failures == 0 && polish_share >= 0.8,
        format!(
            "{} solver runs, certificate failures {}, decrease failures {} (worst decrease / guaranteed {:.3}); \
             300 flows, value failures {value_failures}; polish beats cold start on {:.0}% at eps 0.1",
            record.runs,
            record.certificate_failures,
            record.decrease_failures,
            record.worst_decrease_ratio,
            100.0 * polish_share,
        ),
    )
}

fn random_box_quadratic(seed: u64, d: usize) -> BoxQuadratic {
    let mut rng = seeded_rng(seed);
    let curvature = (0..d).map(|_| rng.random_range(0.1..5.0)).collect();
    let center = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
    let lo: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..0.0)).collect();
    let hi = lo.iter().map(|l| l + rng.random_range(0.5..3.0)).collect();
    BoxQuadratic::new(curvature, center, lo, hi).expect("valid box quadratic")
}

fn composite() -> Outcome {
    let mut problems = Vec::new();
    for h in [0.25, 1.0, 4.0] {
        for slack in [1.0, 2.0, 8.0] {
            problems.push(BoxQuadratic::one_dimensional(h, h * slack).expect("valid 1-D instance"));
        }
    }
    problems.extend((0..5).map(|s| random_box_quadratic(derive_seed(1000, s), 1 + s as usize)));
    let (mut bound_failures, mut ascents) = (0, 0);
    let mut tightest = 0.0f64;
    for q in &problems {
        let x_star = q.minimizer();
        let f_star = q.objective(&x_star);
        let t = minimize(q, &q.hi, 200).expect("minimization runs");
        let eps0 = t.values[0] - f_star;
        for k in 1..=200 {
            let gap = t.values[k] - f_star;
            let bound = convergence_bound(q.lipschitz, q.diameter(), eps0, k).expect("k >= 1");
            bound_failures += usize::from(gap > bound + 1e-12);
            ascents += usize::from(t.values[k] > t.values[k - 1] + 1e-12);
            if bound > 0.0 {
                tightest = tightest.max(gap / bound);
            }
        }
    }
    Outcome::new(
        bound_failures == 0 && ascents == 0,
        format!(
            "{} problems x 200 steps, bound failures {bound_failures}, ascents {ascents}, largest gap/bound {tightest:.3}",
            problems.len()
        ),
    )
}

fn balance_certification() -> Outcome {
    let router = ApproxRouter::default();
    let eps = 0.1;
    let (mut unsound, mut errors, mut balanced, mut unbalanced) = (0, 0, 0, 0);
    for s in 0..200 {
        let mut rng = seeded_rng(derive_seed(1100, s));
        let n = rng.random_range(2..=12);
        let generated_alpha = [1.0, 1.3, 1.8, 2.5, 4.0, 6.0][s as usize % 6];
        let g = random_balanced(n, n, generated_alpha, &mut rng);
        let bal = imbalance_exact(&g).expect("strongly connected").value;
        for alpha in [1.5, 2.0, 4.0] {
            match check_balance(&g, alpha, eps, &router) {
                Ok(BalanceCheck::Balanced {
                    circulation,
                    max_congestion,
                }) => {
                    balanced += 1;
                    let routed = incidence_apply(&g, &circulation).expect("lengths match");
                    let conserved = routed.iter().all(|x| x.abs() <= 1e-6 * g.total_weight());
                    let within = g.edges().iter().zip(circulation.iter()).all(|(e, &f)| {
                        let c = f / e.weight;
                        c >= 1.0 - 1e-9 && c <= max_congestion * (1.0 + 1e-9)
                    });
                    let sound = bal <= alpha * (1.0 + 1e-9) && max_congestion <= alpha * (1.0 + 1e-9);
                    unsound += usize::from(!(conserved && within && sound));
                }
                Ok(BalanceCheck::Unbalanced { cut, ratio }) => {
                    unbalanced += 1;
                    let recomputed = cut_ratio(&g, &cut);
                    let sound = ratio > (1.0 - eps) * alpha
                        && relative_gap(ratio, recomputed) <= 1e-9
                        && bal >= ratio * (1.0 - 1e-9);
                    unsound += usize::from(!sound);
                }
                Err(_) => errors += 1,
            }
        }
    }
    Outcome::new(
        unsound == 0 && errors == 0,
        format!("600 decisions ({balanced} balanced, {unbalanced} unbalanced), unsound {unsound}, errors {errors}"),
    )
}

fn sparsest() -> Outcome {
    let (mut unsound, mut cuts, mut errors) = (0, 0, 0);
    for s in 0..150 {
        let mut rng = seeded_rng(derive_seed(1200, s));
        let n = 2 * rng.random_range(2..=8);
        let g = if s.is_multiple_of(2) {
            planted_cut(n, rng.random_range(0.3..0.9), rng.random_range(1..=3), &mut rng).0
        } else {
            random_strongly_connected(n, rng.random_range(0.2..0.7), 1.0, 1.0, &mut rng)
        };
        let phi = rng.random_range(0.02..1.0);
        let options = SparsestCutOptions {
            seed: s,
            ..Default::default()
        };
        match sparsest_cut(&g, phi, &ExactRouter, options) {
            Ok(SparsityResult::Cut {
                cut,
                sparsity: reported,
                ..
            }) => {
                cuts += 1;
                let actual = sparsity(&g, &cut).expect("unit graph");
                unsound += usize::from(actual > phi || relative_gap(actual, reported) > 1e-12);
            }
            Ok(SparsityResult::Certificate { .. }) => {}
            Err(_) => errors += 1,
        }
    }
    let n = 32;
    let mut recovered = 0;
    for s in 0..100 {
        let (g, side) = planted_cut(n, 0.5, 1, &mut seeded_rng(derive_seed(1201, s)));
        let planted = Cut::new(side).expect("proper planted side");
        let planted_sparsity = sparsity(&g, &planted).expect("unit graph");
        let phi = ((n as f64).ln().powi(2) * planted_sparsity).min(1.0);
        let options = SparsestCutOptions {
            seed: s,
            ..Default::default()
        };
        match sparsest_cut(&g, phi, &ExactRouter, options) {
            Ok(SparsityResult::Cut {
                cut, sparsity: found, ..
            }) => {
                cuts += 1;
                unsound += usize::from(sparsity(&g, &cut).expect("unit graph") > phi);
                let same = cut == planted || cut == planted.complement();
                recovered += usize::from(same || found <= planted_sparsity * (1.0 + 1e-12));
            }
            Ok(SparsityResult::Certificate { .. }) => {}
            Err(_) => errors += 1,
        }
    }
    Outcome::new(
        unsound == 0 && errors == 0 && recovered >= 95,
        format!("{cuts} cuts returned, unsound {unsound}, errors {errors}; planted recovery {recovered}/100"),
    )
}
