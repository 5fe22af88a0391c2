//! Competitive ratios of single-source routings.
//!
//! For demands from `s`, `OPT_b <= 1` exactly when `b(S) <= w(into S)` for
//! every `S` avoiding `s`. With `b >= 0` this is the polymatroid of the
//! monotone rank `f(S) = maxflow(s -> S)`, so the largest load a routing can
//! be forced to put on one edge is a greedy sum over vertices sorted by their
//! per-unit load, with rank increments from an incrementally grown max flow.

use super::ObliviousRouting;
use crate::error::{Error, Result};
use crate::graph::{congestion, Demand, DirectedGraph};
use crate::oracles::{exact_min_congestion, FlowNetwork};

/// The largest `congestion(route(b)) / OPT_b` over all `s`-sourced demands.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstCase {
    pub ratio: f64,
    /// Edge on which the worst demand concentrates.
    pub edge: usize,
    /// A demand attaining the ratio, normalized to `OPT = 1`.
    pub demand: Demand,
}

/// Per-unit load of the routing on every edge for the unit demand to every vertex.
fn unit_loads(g: &DirectedGraph, routing: &ObliviousRouting) -> Result<Vec<Vec<f64>>> {
    (0..g.n()).map(|v| routing.pair_flow(g, v).map(|f| f.0)).collect()
}

/// Largest `a . b` over `s`-sourced `b >= 0` with `OPT_b <= 1`, by the
/// polymatroid greedy. Returns the value and the maximizing sink amounts.
pub fn max_linear_over_unit_demands(g: &DirectedGraph, s: usize, a: &[f64]) -> (f64, Vec<f64>) {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).filter(|&v| v != s && a[v] > 0.0).collect();
    order.sort_by(|&x, &y| a[y].total_cmp(&a[x]).then(x.cmp(&y)));
    let big = 2.0 * g.total_weight() + 1.0;
    let mut net = FlowNetwork::new(n + 1);
    for e in g.edges() {
        net.add_arc(e.tail, e.head, e.weight);
    }
    let mut amounts = vec![0.0; n];
    let mut value = 0.0;
    for v in order {
        net.add_arc(v, n, big);
        let gained = net.augment(s, n);
        amounts[v] = gained;
        value += a[v] * gained;
    }
    (value, amounts)
}

/// Exact worst-case competitive ratio of `routing` over all demands from its source.
pub fn worst_case_ratio(g: &DirectedGraph, routing: &ObliviousRouting) -> Result<WorstCase> {
    let s = routing.source();
    let n = g.n();
    if n == 1 {
        return Ok(WorstCase {
            ratio: 1.0,
            edge: 0,
            demand: Demand::zeros(1),
        });
    }
    let loads = unit_loads(g, routing)?;
    let mut best = WorstCase {
        ratio: f64::NEG_INFINITY,
        edge: 0,
        demand: Demand::zeros(n),
    };
    for e in 0..g.m() {
        let w = g.edge(e).weight;
        let a: Vec<f64> = (0..n).map(|v| loads[v][e] / w).collect();
        let (value, amounts) = max_linear_over_unit_demands(g, s, &a);
        if value > best.ratio {
            let mut d = amounts;
            d[s] = -d.iter().sum::<f64>();
            best = WorstCase {
                ratio: value,
                edge: e,
                demand: Demand(d),
            };
        }
    }
    Ok(best)
}

/// All unit pair demands from `s` plus the demand sending one unit to every other vertex.
pub fn default_demand_family(n: usize, s: usize) -> Vec<Demand> {
    let mut family: Vec<Demand> = (0..n).filter(|&v| v != s).map(|v| Demand::unit(n, s, v)).collect();
    if n > 1 {
        let mut all = vec![1.0; n];
        all[s] = -((n - 1) as f64);
        family.push(Demand(all));
    }
    family
}

/// Largest `congestion(route(b)) / OPT_b` over the given demands.
pub fn competitive_ratio(g: &DirectedGraph, routing: &ObliviousRouting, family: &[Demand]) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::InvalidParameter("demand family is empty".into()));
    }
    let mut worst = 0.0f64;
    for b in family {
        let opt = exact_min_congestion(g, b)?.value;
        if opt > 0.0 {
            worst = worst.max(congestion(g, &routing.route(g, b)?) / opt);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bidirected, seeded_rng};
    use crate::graph::cut_weight;
    use crate::graph::Cut;
    use crate::oracles::{solve_lp, LinearProgram, LpOutcome};
    use crate::routing::{crude_routing, find_routing, RoutingOptions};
    use crate::testing::random_strong_graph;
    use proptest::prelude::*;

    /// `max a . b` subject to `b(S) <= w(into S)` for every nonempty `S` avoiding `s`, by LP.
    fn lp_max_linear(g: &DirectedGraph, s: usize, a: &[f64]) -> f64 {
        let n = g.n();
        let vars: Vec<usize> = (0..n).filter(|&v| v != s).collect();
        let mut lp = LinearProgram {
            c: vars.iter().map(|&v| -a[v]).collect(),
            ..Default::default()
        };
        for mask in 1u64..(1 << vars.len()) {
            let members: Vec<usize> = (0..vars.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vars[i])
                .collect();
            let cut = Cut::from_vertices(n, &members).unwrap();
            let (_, w_in) = cut_weight(g, &cut);
            lp.a_ub.push((0..vars.len()).map(|i| (mask >> i & 1) as f64).collect());
            lp.b_ub.push(w_in);
        }
        match solve_lp(&lp) {
            LpOutcome::Optimal { value, .. } => -value,
            other => panic!("unexpected LP outcome {other:?}"),
        }
    }

    #[test]
    fn star_is_one_competitive() {
        let pairs: Vec<_> = (1..=5).map(|v| (0, v, 1.0)).collect();
        let g = bidirected(6, &pairs);
        let c = find_routing(&g, 0, &mut seeded_rng(3), RoutingOptions::default()).unwrap();
        let worst = worst_case_ratio(&g, &c.routing).unwrap();
        assert!((worst.ratio - 1.0).abs() < 1e-9);
        assert!(
            (crude_routing(&g, 0)
                .map(|r| worst_case_ratio(&g, &r).unwrap().ratio)
                .unwrap()
                - 1.0)
                .abs()
                < 1e-9
        );
    }

    #[test]
    fn pair_family_ratio_is_at_least_one() {
        let (g, _) = random_strong_graph(11, 7);
        let r = crude_routing(&g, 2).unwrap();
        let family = default_demand_family(7, 2);
        assert!(competitive_ratio(&g, &r, &family).unwrap() >= 1.0 - 1e-9);
        assert!(competitive_ratio(&g, &r, &[]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn greedy_matches_lp(seed in any::<u64>(), n in 2usize..8) {
            let (g, _) = random_strong_graph(seed, n);
            let mut rng = seeded_rng(seed);
            let s = rand::Rng::random_range(&mut rng, 0..n);
            let a: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(&mut rng, -0.5..2.0)).collect();
            let (greedy, amounts) = max_linear_over_unit_demands(&g, s, &a);
            let lp = lp_max_linear(&g, s, &a);
            prop_assert!((greedy - lp).abs() <= 1e-7 * (1.0 + lp.abs()));
            let mut d = amounts.clone();
            d[s] = -d.iter().sum::<f64>();
            if d.iter().any(|&x| x > 0.0) {
                let opt = exact_min_congestion(&g, &Demand(d)).unwrap().value;
                prop_assert!(opt <= 1.0 + 1e-9);
            }
        }

        #[test]
        fn worst_case_dominates_every_family_member(seed in any::<u64>(), n in 2usize..9) {
            let (g, _) = random_strong_graph(seed, n);
            let r = crude_routing(&g, 0).unwrap();
            let worst = worst_case_ratio(&g, &r).unwrap();
            let family = default_demand_family(n, 0);
            let sampled = competitive_ratio(&g, &r, &family).unwrap();
            prop_assert!(sampled <= worst.ratio * (1.0 + 1e-9));
            let attained = competitive_ratio(&g, &r, &[worst.demand.clone()]).unwrap();
            prop_assert!((attained - worst.ratio).abs() <= 1e-7 * worst.ratio);
        }
    }
}
