use super::almost_route::{almost_route_directed, AlmostRouteOptions};
use super::approximator::CongestionApproximator;
use super::fast_route::fast_almost_route;
use crate::error::{Error, Result};
use crate::graph::{congestion, incidence_apply, threshold_cut, Cut, Demand, DirectedGraph, Flow};
use crate::routing::CrudeRouter;

/// A flow routing a demand exactly, with a certified lower bound on the optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRouting {
    /// `B f = b` up to rounding.
    pub flow: Flow,
    /// `||C^{-1} f||_inf`, an upper bound on `OPT_b`.
    pub congestion: f64,
    /// Threshold cut of the final potentials.
    pub cut: Option<Cut>,
    /// `b_S / w(V\S, S)` for `cut`, a lower bound on `OPT_b`.
    pub lower_bound: f64,
    /// Flow moves summed over all potential-reduction runs.
    pub iterations: usize,
    /// Residual rounds after the first solve.
    pub recovery_rounds: usize,
}

const MAX_RECOVERY_ROUNDS: usize = 40;

/// Approximately minimum-congestion routing of `b`: one accelerated solve at
/// `eps`, then the leftover demand is repeatedly re-solved at `eps = 1/2`
/// until routing the remainder through `crude` costs at most `eps / 4` of the
/// certified lower bound.
pub fn route_demand<A: CongestionApproximator + ?Sized>(
    g: &DirectedGraph,
    r: &A,
    crude: &CrudeRouter,
    b: &Demand,
    eps: f64,
    options: AlmostRouteOptions,
) -> Result<ApproxRouting> {
    if b.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: b.len(),
        });
    }
    if b.is_zero() {
        return Ok(ApproxRouting {
            flow: Flow::zeros(g.m()),
            congestion: 0.0,
            cut: None,
            lower_bound: 0.0,
            iterations: 0,
            recovery_rounds: 0,
        });
    }
    let first = fast_almost_route(g, r, b, eps, options)?;
    let mut iterations = first.warm_start_iterations + first.result.iterations;
    let (cut, lower_bound) = match threshold_cut(g, &first.result.potentials, b) {
        Ok(t) => (Some(t.cut), t.ratio.max(0.0)),
        Err(_) => (None, 0.0),
    };
    let mut flow = first.result.flow;
    let mut rounds = 0;
    loop {
        let routed = incidence_apply(g, &flow)?;
        let residual = Demand(b.iter().zip(routed.iter()).map(|(x, y)| x - y).collect());
        let patch = crude.route(g, &residual);
        if rounds >= MAX_RECOVERY_ROUNDS || congestion(g, &patch) <= 0.25 * eps * lower_bound {
            flow.add_assign_scaled(&patch, 1.0);
            break;
        }
        let step = almost_route_directed(g, r, &residual, 0.5, None, options)?;
        iterations += step.iterations;
        flow.add_assign_scaled(&step.flow, 1.0);
        rounds += 1;
    }
    Ok(ApproxRouting {
        congestion: congestion(g, &flow),
        flow,
        cut,
        lower_bound,
        iterations,
        recovery_rounds: rounds,
    })
}

/// Anything that routes a demand with an upper bound and a certified lower bound.
pub trait DemandRouter {
    fn route(&self, g: &DirectedGraph, b: &Demand, eps: f64) -> Result<ApproxRouting>;
}

/// Which congestion approximator [`ApproxRouter`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproximatorKind {
    /// One row per proper cut; exact on Eulerian graphs. Small graphs only.
    AllCuts,
    /// Cuts of oblivious-routing trees on the undirected copy.
    Trees,
    /// `AllCuts` up to the given number of vertices, `Trees` beyond.
    Auto(usize),
}

/// Router built on the approximate solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRouter {
    pub kind: ApproximatorKind,
    pub options: AlmostRouteOptions,
    /// Seed for randomized approximator construction.
    pub seed: u64,
}

impl Default for ApproxRouter {
    fn default() -> Self {
        ApproxRouter {
            kind: ApproximatorKind::Auto(12),
            options: AlmostRouteOptions::default(),
            seed: 0,
        }
    }
}

impl DemandRouter for ApproxRouter {
    fn route(&self, g: &DirectedGraph, b: &Demand, eps: f64) -> Result<ApproxRouting> {
        let crude = CrudeRouter::new(g, 0)?;
        let use_all_cuts = match self.kind {
            ApproximatorKind::AllCuts => true,
            ApproximatorKind::Trees => false,
            ApproximatorKind::Auto(limit) => g.n() <= limit,
        };
        if g.n() < 2 {
            return ExactRouter.route(g, b, eps);
        }
        if use_all_cuts {
            let r = crate::oracles::all_cuts_congestion_approximator(g)?;
            route_demand(g, &r, &crude, b, eps, self.options)
        } else {
            let r = super::tree_congestion_approximator(g, self.seed)?;
            route_demand(g, &r, &crude, b, eps, self.options)
        }
    }
}

/// Router returning the exact optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExactRouter;

impl DemandRouter for ExactRouter {
    fn route(&self, g: &DirectedGraph, b: &Demand, _eps: f64) -> Result<ApproxRouting> {
        let r = crate::oracles::exact_min_congestion(g, b)?;
        Ok(ApproxRouting {
            congestion: congestion(g, &r.flow),
            flow: r.flow,
            cut: r.cut,
            lower_bound: r.cut_ratio,
            iterations: 0,
            recovery_rounds: 0,
        })
    }
}
