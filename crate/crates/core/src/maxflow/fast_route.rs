use super::almost_route::{almost_route_directed, flow_congestion, AlmostRoute, AlmostRouteOptions, PotentialState};
use super::approximator::CongestionApproximator;
use super::prox::proximal_step;
use crate::error::Result;
use crate::graph::DirectedGraph;

/// Result of the three-phase router.
#[derive(Debug, Clone, PartialEq)]
pub struct FastAlmostRoute {
    /// Output of the final potential-reduction phase.
    pub result: AlmostRoute,
    pub warm_start_iterations: usize,
    pub prox_steps: usize,
    pub polish_iterations: usize,
    /// Potential after the warm start and after each proximal step, in the
    /// scale fixed by the warm start.
    pub phi_trace: Vec<f64>,
}

/// Smoothness constant used by the proximal phase: the soft-max term satisfies
/// `mu(f + h) <= mu(f) + grad^T h + 2 alpha^2 ||C^{-1} h||_inf^2`.
pub fn prox_lipschitz(alpha: f64) -> f64 {
    4.0 * alpha * alpha
}

/// Warm start at `eps = 1/2`, then `ceil(alpha^2 / eps^2)` proximal steps on the
/// same scaled problem, then a final potential-reduction run at `eps`.
pub fn fast_almost_route<A: CongestionApproximator + ?Sized>(
    g: &DirectedGraph,
    r: &A,
    b: &[f64],
    eps: f64,
    options: AlmostRouteOptions,
) -> Result<FastAlmostRoute> {
    let warm = almost_route_directed(g, r, b, 0.5, None, options)?;
    if b.iter().all(|&x| x == 0.0) || eps >= 0.5 {
        let it = warm.iterations;
        return Ok(FastAlmostRoute {
            result: warm,
            warm_start_iterations: it,
            prox_steps: 0,
            polish_iterations: 0,
            phi_trace: Vec::new(),
        });
    }
    let alpha = r.quality();
    let n = g.n().max(2) as f64;
    let upper = 50.0 * n.ln() / eps;
    let scaled_b: Vec<f64> = b.iter().map(|x| x * warm.scale).collect();
    let mut f: Vec<f64> = warm.flow.iter().map(|x| x * warm.scale).collect();
    for (x, e) in f.iter_mut().zip(g.edges()) {
        *x = x.clamp(0.0, upper * e.weight);
    }
    let steps = ((alpha * alpha) / (eps * eps)).ceil() as usize;
    let lipschitz = prox_lipschitz(alpha);
    let mut state = PotentialState::new(g, r);
    let mut phi_trace = Vec::with_capacity(steps + 1);
    for _ in 0..steps {
        let mu = state.mu(&f, &scaled_b);
        phi_trace.push(flow_congestion(g, &f) + mu);
        f = proximal_step(g, &state.grad, &f, lipschitz, upper);
    }
    let mu = state.mu(&f, &scaled_b);
    phi_trace.push(flow_congestion(g, &f) + mu);
    let start: Vec<f64> = f.iter().map(|x| x / warm.scale).collect();
    let result = almost_route_directed(g, r, b, eps, Some(&start), options)?;
    Ok(FastAlmostRoute {
        warm_start_iterations: warm.iterations,
        prox_steps: steps,
        polish_iterations: result.iterations,
        result,
        phi_trace,
    })
}
