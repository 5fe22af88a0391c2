use super::route::{ApproxRouter, DemandRouter};
use crate::error::{Error, Result};
use crate::graph::{cut_weight, Cut, Demand, DirectedGraph, Flow};

/// A feasible `s-t` flow and an `s-t` cut bracketing the maximum flow value.
#[derive(Debug, Clone, PartialEq)]
pub struct StFlow {
    /// Value of `flow`; at least `max / (1 + eps)`.
    pub value: f64,
    /// Respects every capacity.
    pub flow: Flow,
    /// Source side of the cut.
    pub cut: Cut,
    /// Weight of the edges leaving `cut`; at most `(1 + eps) max`.
    pub cut_capacity: f64,
}

/// Approximate maximum `s-t` flow with the default router.
pub fn max_st_flow(g: &DirectedGraph, s: usize, t: usize, eps: f64) -> Result<StFlow> {
    max_st_flow_with(g, s, t, eps, &ApproxRouter::default())
}

/// Maximum flow value is `1 / OPT` for the unit demand from `s` to `t`, so a
/// single routing gives both sides: the routed flow scaled to congestion 1
/// and the sink side of the certified threshold cut.
pub fn max_st_flow_with(g: &DirectedGraph, s: usize, t: usize, eps: f64, router: &dyn DemandRouter) -> Result<StFlow> {
    let n = g.n();
    if s >= n || t >= n {
        return Err(Error::BadVertex(s.max(t)));
    }
    if s == t {
        return Err(Error::InvalidParameter("source and sink coincide".into()));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1], got {eps}")));
    }
    let routing = router.route(g, &Demand::unit(n, s, t), eps.min(0.5))?;
    let flow = routing.flow.scaled(1.0 / routing.congestion);
    let sink_side = routing.cut.ok_or(Error::NotRoutable)?;
    let cut = sink_side.complement();
    let (cut_capacity, _) = cut_weight(g, &cut);
    if !cut.contains(s) || cut.contains(t) {
        return Err(Error::Precondition(
            "threshold cut does not separate the terminals".into(),
        ));
    }
    Ok(StFlow {
        value: 1.0 / routing.congestion,
        flow,
        cut,
        cut_capacity,
    })
}
