//! Approximate minimum-congestion routing and maximum flow.

mod almost_route;
mod approximator;
mod fast_route;
mod lmax;
mod prox;
mod route;
mod st_flow;
mod tree_approx;

pub use almost_route::{almost_route_directed, AlmostRoute, AlmostRouteOptions};
pub use approximator::{CongestionApproximator, DenseApproximator};
pub use fast_route::{fast_almost_route, prox_lipschitz, FastAlmostRoute};
pub use lmax::{lmax, lmax_with_gradient};
pub use prox::proximal_step;
pub use route::{route_demand, ApproxRouter, ApproxRouting, ApproximatorKind, DemandRouter, ExactRouter};
pub use st_flow::{max_st_flow, max_st_flow_with, StFlow};
pub use tree_approx::{tree_congestion_approximator, TreeApproximator};
