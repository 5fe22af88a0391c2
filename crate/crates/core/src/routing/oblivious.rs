//! Single-source oblivious routings as convex combinations of arborescences,
//! built by multiplicative weights over edge lengths.

use crate::arborescence::{edge_load, find_arborescence, total_stretch, Arborescence, ArborescenceOptions, TreeArc};
use crate::error::{Error, Result};
use crate::generators::seeded_rng;
use crate::graph::{congestion, Demand, DirectedGraph, Flow, CONSERVATION_TOL};
use crate::routing::widest_arborescence;
use rand::Rng;

/// A linear map from `s`-sourced demands to flows: the unit demand `(s, u)` is
/// sent along the root-to-`u` witness walk of every tree, weighted by `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliviousRouting {
    source: usize,
    trees: Vec<(Arborescence, f64)>,
}

impl ObliviousRouting {
    /// Requires positive weights summing to 1 within `1e-9` and trees rooted at `source`.
    pub fn new(source: usize, trees: Vec<(Arborescence, f64)>) -> Result<Self> {
        let total: f64 = trees.iter().map(|t| t.1).sum();
        if trees.is_empty() || trees.iter().any(|t| !(t.1 > 0.0)) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(
                "tree weights must be positive and sum to 1".into(),
            ));
        }
        if let Some((t, _)) = trees.iter().find(|(t, _)| t.root() != source) {
            return Err(Error::InvalidParameter(format!(
                "tree rooted at {} instead of {source}",
                t.root()
            )));
        }
        Ok(ObliviousRouting { source, trees })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn trees(&self) -> &[(Arborescence, f64)] {
        &self.trees
    }

    pub fn weight_sum(&self) -> f64 {
        self.trees.iter().map(|t| t.1).sum()
    }

    /// Flow for a demand whose only source is `s`: `b_v >= 0` for `v != s`
    /// and `b_s = -sum_{v != s} b_v`.
    pub fn route(&self, g: &DirectedGraph, b: &Demand) -> Result<Flow> {
        let n = g.n();
        if b.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mass: f64 = (0..n).filter(|&v| v != self.source).map(|v| b[v]).sum();
        let tol = CONSERVATION_TOL * mass.max(1.0);
        if (0..n).any(|v| v != self.source && b[v] < -tol) || (b[self.source] + mass).abs() > tol {
            return Err(Error::Precondition(format!("demand is not sourced at {}", self.source)));
        }
        let mut flow = Flow::zeros(g.m());
        for (tree, lambda) in &self.trees {
            let mut below: Vec<f64> = (0..n).map(|v| if v == self.source { 0.0 } else { b[v] }).collect();
            for &v in tree.order().iter().rev() {
                if let Some(arc) = tree.arc(v) {
                    let carried = below[v];
                    below[arc.parent] += carried;
                    for &e in &arc.witness {
                        flow[e] += lambda * carried;
                    }
                }
            }
        }
        Ok(flow)
    }

    /// Flow for one unit from the source to `t`.
    pub fn pair_flow(&self, g: &DirectedGraph, t: usize) -> Result<Flow> {
        if t >= g.n() {
            return Err(Error::BadVertex(t));
        }
        if t == self.source {
            return Ok(Flow::zeros(g.m()));
        }
        self.route(g, &Demand::unit(g.n(), self.source, t))
    }
}

/// One multiplicative-weights round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutingStep {
    /// `max_e load(e) / w(e)` for the chosen tree.
    pub max_relative_load: f64,
    pub lambda: f64,
    /// `ln sum_e p_e` before the round.
    pub log_potential: f64,
    /// Total stretch of the chosen tree under the round's lengths.
    pub stretch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RoutingOptions {
    /// Candidate trees per round; defaults to `ceil(log2 n) + 1`.
    pub candidates: Option<usize>,
    /// Defaults to `ceil(64 ln n) * ceil(m / n)`. Every round but the last has
    /// weight `1 / max_e load/w`, and that load grows with the average degree.
    pub max_iterations: Option<usize>,
    pub arborescence: ArborescenceOptions,
}

/// The routing together with the per-round record.
#[derive(Debug, Clone)]
pub struct RoutingConstruction {
    pub routing: ObliviousRouting,
    pub steps: Vec<RoutingStep>,
}

fn log_sum_exp(x: &[f64]) -> f64 {
    let top = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + x.iter().map(|v| (v - top).exp()).sum::<f64>().ln()
}

/// Multiplicative weights over arborescences rooted at `s`. Each round picks
/// the lowest-stretch tree among several candidates under lengths
/// `p_e / (w_e sum p)`, gives it weight `min(1 / max_e load/w, remaining)` and
/// raises `p_e` by `exp(lambda load_e / w_e)`. Stops once the weights sum to 1.
pub fn find_routing(
    g: &DirectedGraph,
    s: usize,
    rng: &mut impl Rng,
    options: RoutingOptions,
) -> Result<RoutingConstruction> {
    let (n, m) = (g.n(), g.m());
    if s >= n {
        return Err(Error::BadVertex(s));
    }
    if n == 1 {
        let t = Arborescence::from_arcs(s, vec![None])?;
        return Ok(RoutingConstruction {
            routing: ObliviousRouting::new(s, vec![(t, 1.0)])?,
            steps: vec![],
        });
    }
    let ln_n = (n as f64).ln();
    let candidates = options
        .candidates
        .unwrap_or((n as f64).log2().ceil() as usize + 1)
        .max(1);
    let max_iterations = options
        .max_iterations
        .unwrap_or((64.0 * ln_n).ceil() as usize * m.div_ceil(n))
        .max(1);
    let weights = g.weights();
    // p_e is kept as ln p_e.
    let mut log_p = vec![0.0f64; m];
    let mut trees = Vec::new();
    let mut steps = Vec::new();
    let mut total = 0.0f64;
    while total < 1.0 {
        if steps.len() == max_iterations {
            return Err(Error::IterationLimit(max_iterations));
        }
        let log_potential = log_sum_exp(&log_p);
        // Lengths are scale free for the tree construction, so normalize by the largest p.
        let top = log_p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lengths: Vec<f64> = (0..m).map(|e| (log_p[e] - top).exp() / weights[e]).collect();
        let gk = g.with_lengths(&lengths)?;
        let seeds: Vec<u64> = (0..candidates).map(|_| rng.random()).collect();
        let (tree, stretch) = best_candidate(&gk, s, &seeds, options.arborescence)?;
        let load = edge_load(g, &tree)?;
        let max_relative_load = (0..m).map(|e| load[e] / weights[e]).fold(0.0, f64::max);
        let lambda = (1.0 / max_relative_load).min(1.0 - total);
        for e in 0..m {
            log_p[e] += lambda * load[e] / weights[e];
        }
        total += lambda;
        if 1.0 - total < 1e-12 {
            total = 1.0;
        }
        steps.push(RoutingStep {
            max_relative_load,
            lambda,
            log_potential,
            stretch,
        });
        trees.push((tree, lambda));
    }
    Ok(RoutingConstruction {
        routing: ObliviousRouting::new(s, trees)?,
        steps,
    })
}

/// Builds one tree per seed in parallel and keeps the lowest total stretch,
/// ties going to the earlier seed.
fn best_candidate(
    g: &DirectedGraph,
    s: usize,
    seeds: &[u64],
    options: ArborescenceOptions,
) -> Result<(Arborescence, f64)> {
    let build = |seed: u64| -> Result<(Arborescence, f64)> {
        let t = find_arborescence(g, s, &mut seeded_rng(seed), options)?;
        let stretch = total_stretch(g, &t)?;
        Ok((t, stretch))
    };
    let results: Vec<Result<(Arborescence, f64)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds.iter().map(|&seed| scope.spawn(move || build(seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("candidate thread panicked"))
            .collect()
    });
    let mut best: Option<(Arborescence, f64)> = None;
    for r in results {
        let (t, stretch) = r?;
        if best.as_ref().is_none_or(|(_, b)| stretch < *b) {
            best = Some((t, stretch));
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Routes `s`-sourced demands along the maximum-bottleneck out-arborescence.
pub fn crude_routing(g: &DirectedGraph, s: usize) -> Result<ObliviousRouting> {
    let (parent, _) = widest_arborescence(g, s, false)?;
    let arcs = parent
        .iter()
        .map(|p| {
            p.map(|e| {
                let edge = g.edge(e);
                TreeArc {
                    parent: edge.tail,
                    length: edge.length,
                    witness: vec![e],
                }
            })
        })
        .collect();
    ObliviousRouting::new(s, vec![(Arborescence::from_arcs(s, arcs)?, 1.0)])
}

/// Congestion of a routed demand relative to its optimum.
pub fn routed_ratio(g: &DirectedGraph, routing: &ObliviousRouting, b: &Demand) -> Result<f64> {
    let f = routing.route(g, b)?;
    let opt = crate::oracles::exact_min_congestion(g, b)?.value;
    if opt == 0.0 {
        return Ok(1.0);
    }
    Ok(congestion(g, &f) / opt)
}
