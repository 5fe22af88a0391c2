//! Potential reduction for directed minimum-congestion routing.
//!
//! With `x = 2 alpha R (b - B f)`, the potential is
//! `phi(f) = ||C^{-1} f||_inf + lmax(x)`. The loop alternates three moves
//! with fixed step `delta = eps / (10 alpha^2)` until none applies:
//! rescale `(f, b)` when `phi` is too small, push flow along edges where the
//! gradient of the soft-max term is negative, and shrink `f` when doing so
//! reduces the potential to first order.

use super::approximator::CongestionApproximator;
use super::lmax::lmax_with_gradient;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Flow};

/// Output of the potential-reduction loop.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostRoute {
    /// Flow in the units of the input demand.
    pub flow: Flow,
    /// Vertex potentials `R^T p` at termination.
    pub potentials: Vec<f64>,
    /// Total factor applied to the input demand inside the loop.
    pub scale: f64,
    /// Potential at termination, in scaled units.
    pub phi: f64,
    /// `b^T v / ||C max(B^T v, 0)||_1` at termination, in scaled units.
    pub dual_value: f64,
    /// Number of flow moves (pushes and shrinks).
    pub iterations: usize,
    pub rescalings: usize,
    /// Smallest potential decrease observed over all flow moves.
    pub min_decrease: f64,
    /// Per-move decrease the step size guarantees: `eps^2 / (200 alpha^2)`.
    pub required_decrease: f64,
}

impl AlmostRoute {
    /// Lower bound on `OPT_b` in the units of the input demand.
    pub fn lower_bound(&self) -> f64 {
        self.dual_value / self.scale
    }

    /// `phi / dual_value`; at most `1 + eps` when the termination certificate holds.
    pub fn certificate_ratio(&self) -> f64 {
        self.phi / self.dual_value
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlmostRouteOptions {
    pub max_iterations: usize,
}

impl Default for AlmostRouteOptions {
    fn default() -> Self {
        AlmostRouteOptions {
            max_iterations: 20_000_000,
        }
    }
}

/// Scratch buffers and the evaluation of `phi` and its gradient.
pub(crate) struct PotentialState<'a, A: CongestionApproximator + ?Sized> {
    pub g: &'a DirectedGraph,
    pub r: &'a A,
    pub alpha: f64,
    residual: Vec<f64>,
    x: Vec<f64>,
    p: Vec<f64>,
    pub v: Vec<f64>,
    /// Gradient of the soft-max term with respect to `f`.
    pub grad: Vec<f64>,
}

impl<'a, A: CongestionApproximator + ?Sized> PotentialState<'a, A> {
    pub fn new(g: &'a DirectedGraph, r: &'a A) -> Self {
        PotentialState {
            g,
            r,
            alpha: r.quality(),
            residual: vec![0.0; g.n()],
            x: vec![0.0; r.rows()],
            p: vec![0.0; r.rows()],
            v: vec![0.0; g.n()],
            grad: vec![0.0; g.m()],
        }
    }

    fn residual(&mut self, f: &[f64], b: &[f64]) {
        self.residual.copy_from_slice(b);
        for (e, &x) in self.g.edges().iter().zip(f) {
            self.residual[e.head] -= x;
            self.residual[e.tail] += x;
        }
    }

    /// `2 alpha ||R (b - B f)||_inf`.
    pub fn residual_norm(&mut self, f: &[f64], b: &[f64]) -> f64 {
        self.residual(f, b);
        self.r.apply(&self.residual, &mut self.x);
        2.0 * self.alpha * self.x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Returns `mu(f) = lmax(2 alpha R (b - B f))` and fills `v` and `grad`.
    pub fn mu(&mut self, f: &[f64], b: &[f64]) -> f64 {
        self.residual(f, b);
        self.r.apply(&self.residual, &mut self.x);
        let s = 2.0 * self.alpha;
        self.x.iter_mut().for_each(|v| *v *= s);
        let value = lmax_with_gradient(&self.x, &mut self.p);
        self.r.apply_transpose(&self.p, &mut self.v);
        for (gr, e) in self.grad.iter_mut().zip(self.g.edges()) {
            *gr = -s * (self.v[e.head] - self.v[e.tail]);
        }
        value
    }

    /// `b^T v / ||C max(B^T v, 0)||_1` for the current potentials.
    pub fn dual_value(&self, b: &[f64]) -> f64 {
        let num: f64 = b.iter().zip(&self.v).map(|(x, y)| x * y).sum();
        let den: f64 = self
            .g
            .edges()
            .iter()
            .map(|e| e.weight * (self.v[e.head] - self.v[e.tail]).max(0.0))
            .sum();
        num / den
    }
}

/// `||C^{-1} f||_inf`.
pub(crate) fn flow_congestion(g: &DirectedGraph, f: &[f64]) -> f64 {
    g.edges().iter().zip(f).map(|(e, &x)| x / e.weight).fold(0.0, f64::max)
}

/// Runs the potential-reduction loop from `f0` (in the units of `b`).
pub fn almost_route_directed<A: CongestionApproximator + ?Sized>(
    g: &DirectedGraph,
    r: &A,
    b: &[f64],
    eps: f64,
    f0: Option<&[f64]>,
    options: AlmostRouteOptions,
) -> Result<AlmostRoute> {
    let (n, m) = (g.n(), g.m());
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1/2], got {eps}")));
    }
    if let Some(f) = f0 {
        if f.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: f.len(),
            });
        }
    }
    let mut f: Vec<f64> = f0.map_or_else(|| vec![0.0; m], |f| f.to_vec());
    if b.iter().all(|&x| x == 0.0) {
        return Ok(AlmostRoute {
            flow: Flow(vec![0.0; m]),
            potentials: vec![0.0; n],
            scale: 1.0,
            phi: 0.0,
            dual_value: 0.0,
            iterations: 0,
            rescalings: 0,
            min_decrease: f64::INFINITY,
            required_decrease: 0.0,
        });
    }
    let ln_n = (n.max(2) as f64).ln();
    let mut state = PotentialState::new(g, r);
    let alpha = state.alpha;
    let delta = eps / (10.0 * alpha * alpha);
    let mut b: Vec<f64> = b.to_vec();

    let current = flow_congestion(g, &f) + state.residual_norm(&f, &b);
    let mut scale = 20.0 * ln_n / (eps * current);
    f.iter_mut().chain(b.iter_mut()).for_each(|x| *x *= scale);

    let low = 16.0 * ln_n / eps;
    let required_decrease = eps * eps / (200.0 * alpha * alpha);
    let (mut iterations, mut rescalings) = (0usize, 0usize);
    let mut min_decrease = f64::INFINITY;
    let mut pending: Option<f64> = None;
    loop {
        let mu = state.mu(&f, &b);
        let phi = flow_congestion(g, &f) + mu;
        if let Some(before) = pending.take() {
            min_decrease = min_decrease.min(before - phi);
        }
        if phi < low {
            let k = 17.0 / 16.0;
            f.iter_mut().chain(b.iter_mut()).for_each(|x| *x *= k);
            scale *= k;
            rescalings += 1;
            continue;
        }
        if iterations >= options.max_iterations {
            return Err(Error::IterationLimit(options.max_iterations));
        }
        let push: f64 = state
            .grad
            .iter()
            .zip(g.edges())
            .filter(|(gr, _)| **gr < 0.0)
            .map(|(gr, e)| -gr * e.weight)
            .sum();
        if push > 1.0 + eps / 4.0 {
            for ((x, gr), e) in f.iter_mut().zip(&state.grad).zip(g.edges()) {
                if *gr < 0.0 {
                    *x += delta * e.weight;
                }
            }
            pending = Some(phi);
            iterations += 1;
            continue;
        }
        // Shrinking by `delta / ||C^{-1} f||_inf` moves the flow by at most `delta`
        // in the congestion norm, so the second-order term stays `2 alpha^2 delta^2`;
        // comparing against `(eps / 4) phi >= (eps / 4) ||C^{-1} f||_inf` keeps the
        // first-order gain above `eps delta / 4`. The termination certificate only
        // needs this left-hand side to be at most `(eps / 4) phi`.
        let congestion = flow_congestion(g, &f);
        let shrink = congestion + state.grad.iter().zip(&f).map(|(gr, x)| gr * x).sum::<f64>();
        if shrink > eps / 4.0 * phi {
            let step = (delta / congestion).min(1.0);
            f.iter_mut().for_each(|x| *x *= 1.0 - step);
            pending = Some(phi);
            iterations += 1;
            continue;
        }
        let dual_value = state.dual_value(&b);
        assert!(
            phi <= (1.0 + eps) * dual_value * (1.0 + 1e-9),
            "termination certificate fails: phi {phi} > (1 + {eps}) * {dual_value}"
        );
        let flow = Flow(f.iter().map(|x| x / scale).collect());
        return Ok(AlmostRoute {
            flow,
            potentials: state.v.clone(),
            scale,
            phi,
            dual_value,
            iterations,
            rescalings,
            min_decrease,
            required_decrease,
        });
    }
}
