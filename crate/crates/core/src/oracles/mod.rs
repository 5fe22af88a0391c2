//! Exact reference solvers used to validate the approximate algorithms:
//! maximum flow, single-commodity minimum congestion, the all-cuts congestion
//! approximator and multicommodity congestion by linear programming.

mod all_cuts;
mod dinic;
mod multicommodity;
mod simplex;

pub use all_cuts::{all_cuts_congestion_approximator, AllCutsApproximator};
pub use dinic::FlowNetwork;
pub use multicommodity::{optimal_multicommodity_congestion, MulticommoditySolution};
pub use simplex::{solve_lp, LinearProgram, LpOutcome};

use crate::error::{Error, Result};
use crate::graph::{cut_weight, demand_cut_ratio, Cut, Demand, DirectedGraph, Flow};

/// Maximum `s`-`t` flow with a minimum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlowResult {
    pub value: f64,
    pub flow: Flow,
    /// Source side of a minimum cut.
    pub cut: Cut,
}

pub fn exact_max_flow(g: &DirectedGraph, s: usize, t: usize) -> Result<MaxFlowResult> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::BadVertex(v));
        }
    }
    if s == t {
        return Err(Error::InvalidParameter("source equals sink".into()));
    }
    let mut net = FlowNetwork::new(g.n());
    for e in g.edges() {
        net.add_arc(e.tail, e.head, e.weight);
    }
    let value = net.augment(s, t);
    let flow = Flow((0..g.m()).map(|i| net.flow(i)).collect());
    let cut = Cut::new(net.residual_reachable(s))?;
    Ok(MaxFlowResult { value, flow, cut })
}

/// Exact minimum congestion for routing one demand vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCongestion {
    /// `OPT_b = min { ||C^{-1} f||_inf : B f = b, f >= 0 }`.
    pub value: f64,
    /// A flow routing `b` with congestion `value`.
    pub flow: Flow,
    /// A cut `S` with `b_S / w(V\S, S) = value`; `None` when `b = 0`.
    pub cut: Option<Cut>,
    pub cut_ratio: f64,
}

/// Feasibility network for routing `b` with capacities `lambda * w`.
/// Vertex `n` is the super source and `n + 1` the super sink.
fn feasibility_network(g: &DirectedGraph, b: &[f64], lambda: f64) -> FlowNetwork {
    let n = g.n();
    let mut net = FlowNetwork::new(n + 2);
    for e in g.edges() {
        net.add_arc(e.tail, e.head, lambda * e.weight);
    }
    for (v, &x) in b.iter().enumerate() {
        if x < 0.0 {
            net.add_arc(n, v, -x);
        } else if x > 0.0 {
            net.add_arc(v, n + 1, x);
        }
    }
    net
}

/// Exact `OPT_b` by Dinkelbach iteration on cut ratios: each infeasible
/// capacity level exposes a cut whose ratio is a strictly larger lower bound,
/// and the first feasible level equals the ratio of the last cut found.
pub fn exact_min_congestion(g: &DirectedGraph, b: &Demand) -> Result<MinCongestion> {
    let n = g.n();
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let demand = b.positive_mass();
    if demand == 0.0 {
        return Ok(MinCongestion {
            value: 0.0,
            flow: Flow::zeros(g.m()),
            cut: None,
            cut_ratio: 0.0,
        });
    }
    // Start from the best singleton cut.
    let mut best: Option<(Cut, f64)> = None;
    for v in 0..n {
        if b[v] > 0.0 && n > 1 {
            let cut = Cut::from_vertices(n, &[v])?;
            let (_, w_in) = cut_weight(g, &cut);
            let r = demand_cut_ratio(b[v], w_in);
            if r == f64::INFINITY {
                return Err(Error::NotRoutable);
            }
            if best.as_ref().is_none_or(|(_, br)| r > *br) {
                best = Some((cut, r));
            }
        }
    }
    let (mut cut, mut lambda) = best.ok_or(Error::NotRoutable)?;
    for _ in 0..10 * n + 100 {
        let mut net = feasibility_network(g, b, lambda);
        let value = net.augment(n, n + 1);
        if value >= demand * (1.0 - 1e-12) {
            let flow = Flow((0..g.m()).map(|i| net.flow(i)).collect());
            return Ok(MinCongestion {
                value: lambda,
                flow,
                cut: Some(cut),
                cut_ratio: lambda,
            });
        }
        let reach = net.residual_reachable(n);
        let sink_side: Vec<bool> = (0..n).map(|v| !reach[v]).collect();
        let t = Cut::new(sink_side)?;
        let (_, w_in) = cut_weight(g, &t);
        let r = demand_cut_ratio(b.on_cut(&t), w_in);
        if r == f64::INFINITY {
            return Err(Error::NotRoutable);
        }
        if r <= lambda {
            // Floating-point stall: the level is feasible up to rounding.
            let mut net = feasibility_network(g, b, lambda * (1.0 + 1e-12));
            net.augment(n, n + 1);
            let flow = Flow((0..g.m()).map(|i| net.flow(i)).collect());
            return Ok(MinCongestion {
                value: lambda,
                flow,
                cut: Some(cut),
                cut_ratio: lambda,
            });
        }
        cut = t;
        lambda = r;
    }
    Err(Error::IterationLimit(10 * n + 100))
}

/// `OPT_b` by enumerating every proper cut: `max_S b_S / w(V\S, S)`. For `n <= 20`.
pub fn min_congestion_by_cut_enumeration(g: &DirectedGraph, b: &[f64]) -> f64 {
    let n = g.n();
    assert!(n <= 20, "cut enumeration is limited to 20 vertices");
    let mut best = 0.0f64;
    for mask in 1u64..(1u64 << n) - 1 {
        let cut = Cut::from_mask(n, mask).expect("proper mask");
        let demand: f64 = cut.vertices().map(|v| b[v]).sum();
        let (_, w_in) = cut_weight(g, &cut);
        best = best.max(demand_cut_ratio(demand, w_in));
    }
    best
}
