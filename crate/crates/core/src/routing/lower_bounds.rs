//! Instances on which every multi-source oblivious routing is far from
//! optimal, and a certificate that evaluates the bound for a concrete routing.
//!
//! The certificate takes the worse of two ratios: the largest per-pair ratio
//! and the ratio of the aggregated pair demands. A routing that is good on
//! every pair must push most of each pair's unit through one bottleneck edge,
//! which makes the aggregate bad.

use super::ObliviousRouting;
use crate::error::{Error, Result};
use crate::generators::{derive_seed, seeded_rng};
use crate::graph::{congestion, dijkstra, incidence_apply, Demand, DirectedGraph, Edge, Flow, CONSERVATION_TOL};
use crate::oracles::{exact_min_congestion, optimal_multicommodity_congestion};
use rand::Rng;

/// Biclique `S x T` of unit edges plus the detour `S -> s -> t -> T` of weight
/// `k` edges. Vertices: `S = 0..k`, `T = k..2k`, `s = 2k`, `t = 2k + 1`.
pub fn gen_lowerbound_general(k: usize) -> Result<DirectedGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (s, t) = (2 * k, 2 * k + 1);
    let kw = k as f64;
    let mut edges = Vec::new();
    for u in 0..k {
        for v in k..2 * k {
            edges.push(Edge::new(u, v, 1.0));
        }
    }
    edges.extend((0..k).map(|u| Edge::new(u, s, kw)));
    edges.push(Edge::new(s, t, kw));
    edges.extend((k..2 * k).map(|v| Edge::new(t, v, kw)));
    DirectedGraph::with_any_connectivity(2 * k + 2, edges)
}

/// Forward cycle `0 -> 1 -> ... -> n-1 -> 0` of unit edges and the reverse
/// cycle of weight `sqrt(n)` edges. Eulerian.
pub fn gen_lowerbound_eulerian(n: usize) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices".into()));
    }
    let heavy = (n as f64).sqrt();
    let mut edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n, 1.0)).collect();
    edges.extend((0..n).map(|i| Edge::new((i + 1) % n, i, heavy)));
    DirectedGraph::new(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundInstance {
    /// Biclique with a shared detour, `2k + 2` vertices.
    General { k: usize },
    /// Two opposite cycles on `n` vertices.
    Eulerian { n: usize },
}

impl LowerBoundInstance {
    pub fn graph(&self) -> Result<DirectedGraph> {
        match *self {
            LowerBoundInstance::General { k } => gen_lowerbound_general(k),
            LowerBoundInstance::Eulerian { n } => gen_lowerbound_eulerian(n),
        }
    }

    /// Unit-demand pairs of the aggregate demand.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match *self {
            LowerBoundInstance::General { k } => (0..k).flat_map(|u| (k..2 * k).map(move |v| (u, v))).collect(),
            LowerBoundInstance::Eulerian { n } => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Bound every routing must meet: `k / 2`, respectively `sqrt(n - 1) / 2`.
    pub fn guaranteed_bound(&self) -> f64 {
        match *self {
            LowerBoundInstance::General { k } => k as f64 / 2.0,
            LowerBoundInstance::Eulerian { n } => ((n - 1) as f64).sqrt() / 2.0,
        }
    }
}

/// A linear map from source-sink pairs to unit flows.
pub trait PairRouting {
    fn pair_flow(&self, g: &DirectedGraph, source: usize, target: usize) -> Result<Flow>;
}

/// Every pair on one shortest path under the edge lengths.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShortestPathRouting;

impl PairRouting for ShortestPathRouting {
    fn pair_flow(&self, g: &DirectedGraph, source: usize, target: usize) -> Result<Flow> {
        let sp = dijkstra(g, source, &g.lengths());
        path_flow(
            g,
            &sp.path_to(g, target).ok_or(Error::Unreachable {
                from: source,
                to: target,
            })?,
        )
    }
}

/// Every pair on a random convex combination of `paths` shortest paths under
/// independent random lengths, reproducible from `seed` and the pair.
#[derive(Debug, Clone, Copy)]
pub struct RandomPathRouting {
    pub seed: u64,
    pub paths: usize,
}

impl PairRouting for RandomPathRouting {
    fn pair_flow(&self, g: &DirectedGraph, source: usize, target: usize) -> Result<Flow> {
        let mut rng = seeded_rng(derive_seed(self.seed, (source * g.n() + target) as u64));
        let mut flow = Flow::zeros(g.m());
        let shares: Vec<f64> = (0..self.paths.max(1)).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = shares.iter().sum();
        for share in shares {
            let lengths: Vec<f64> = (0..g.m()).map(|_| rng.random_range(0.01..1.0)).collect();
            let sp = dijkstra(g, source, &lengths);
            let path = sp.path_to(g, target).ok_or(Error::Unreachable {
                from: source,
                to: target,
            })?;
            flow.add_assign_scaled(&path_flow(g, &path)?, share / total);
        }
        Ok(flow)
    }
}

impl PairRouting for ObliviousRouting {
    fn pair_flow(&self, g: &DirectedGraph, source: usize, target: usize) -> Result<Flow> {
        if source != self.source() {
            return Err(Error::InvalidParameter(format!(
                "routing only serves source {}",
                self.source()
            )));
        }
        ObliviousRouting::pair_flow(self, g, target)
    }
}

fn path_flow(g: &DirectedGraph, path: &[usize]) -> Result<Flow> {
    let mut f = Flow::zeros(g.m());
    for &e in path {
        f[e] += 1.0;
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundCertificate {
    /// Largest `congestion(route(u, v)) / OPT(u, v)` over the pairs.
    pub per_pair_ratio: f64,
    /// `congestion(sum of pair flows) / OPT(all pairs)`.
    pub aggregate_ratio: f64,
    /// Certified lower bound on the routing's competitive ratio.
    pub bound: f64,
}

/// Certified lower bound on the competitive ratio of `routing` on `instance`,
/// using exact per-pair and aggregate optima.
pub fn lowerbound_certificate(
    routing: &dyn PairRouting,
    instance: &LowerBoundInstance,
) -> Result<LowerBoundCertificate> {
    let g = instance.graph()?;
    let pairs = instance.pairs();
    let mut per_pair_ratio = 0.0f64;
    let mut total = Flow::zeros(g.m());
    for &(u, v) in &pairs {
        let f = routing.pair_flow(&g, u, v)?;
        let unit = Demand::unit(g.n(), u, v);
        let routed = incidence_apply(&g, &f)?;
        if f.iter().any(|&x| x < -CONSERVATION_TOL)
            || routed
                .iter()
                .zip(unit.iter())
                .any(|(a, b)| (a - b).abs() > CONSERVATION_TOL)
        {
            return Err(Error::Precondition(format!(
                "pair ({u}, {v}) is not routed as one unit"
            )));
        }
        let opt = exact_min_congestion(&g, &unit)?.value;
        per_pair_ratio = per_pair_ratio.max(congestion(&g, &f) / opt);
        total.add_assign_scaled(&f, 1.0);
    }
    let triples: Vec<(usize, usize, f64)> = pairs.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    let aggregate_opt = optimal_multicommodity_congestion(&g, &triples)?.value;
    let aggregate_ratio = congestion(&g, &total) / aggregate_opt;
    Ok(LowerBoundCertificate {
        per_pair_ratio,
        aggregate_ratio,
        bound: per_pair_ratio.max(aggregate_ratio),
    })
}
