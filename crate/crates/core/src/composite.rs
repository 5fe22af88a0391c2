//! Composite minimization of `g + psi` with an `L`-smooth convex `g` and a
//! nonsmooth `psi` handled by a problem-specific proximal oracle.
//!
//! Each step solves `argmin <grad g(x_k), x> + (L/2) ||x - x_k||^2 + psi(x)`
//! in the problem's own norm. Every step does at least as well as staying
//! put, so objective values never increase.

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::maxflow::proximal_step;

pub trait CompositeProblem {
    fn dim(&self) -> usize;
    /// Smooth part `g`.
    fn smooth(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    /// Nonsmooth part `psi`; `f64::INFINITY` outside its domain.
    fn nonsmooth(&self, x: &[f64]) -> f64;
    /// `argmin <grad, x> + (L/2) ||x - x_k||^2 + psi(x)`.
    fn prox(&self, grad: &[f64], x_k: &[f64]) -> Result<Vec<f64>>;
    /// Smoothness constant of `g` in `norm`.
    fn lipschitz(&self) -> f64;
    /// Diameter of the domain of `psi` in `norm`.
    fn diameter(&self) -> f64;
    fn norm(&self, x: &[f64]) -> f64;

    fn objective(&self, x: &[f64]) -> f64 {
        self.smooth(x) + self.nonsmooth(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `x_0, ..., x_K`.
    pub iterates: Vec<Vec<f64>>,
    /// `f(x_0), ..., f(x_K)`.
    pub values: Vec<f64>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.iterates.last().expect("trajectory starts at x_0")
    }
}

/// Runs `iterations` proximal steps from `x0`.
pub fn minimize<P: CompositeProblem + ?Sized>(problem: &P, x0: &[f64], iterations: usize) -> Result<Trajectory> {
    if x0.len() != problem.dim() {
        return Err(Error::LengthMismatch {
            expected: problem.dim(),
            got: x0.len(),
        });
    }
    if !(problem.lipschitz() > 0.0 && problem.diameter() > 0.0) {
        return Err(Error::InvalidParameter(
            "smoothness and diameter must be positive".into(),
        ));
    }
    let f0 = problem.objective(x0);
    if !f0.is_finite() {
        return Err(Error::InvalidParameter(
            "objective is not finite at the start point".into(),
        ));
    }
    let mut iterates = vec![x0.to_vec()];
    let mut values = vec![f0];
    for k in 0..iterations {
        let x = &iterates[k];
        let next = problem.prox(&problem.gradient(x), x)?;
        if next.len() != problem.dim() {
            return Err(Error::LengthMismatch {
                expected: problem.dim(),
                got: next.len(),
            });
        }
        let value = problem.objective(&next);
        if !value.is_finite() {
            return Err(Error::InvalidParameter(format!("prox step {k} left the domain")));
        }
        iterates.push(next);
        values.push(value);
    }
    Ok(Trajectory { iterates, values })
}

/// Guaranteed gap after `k >= 1` steps:
/// `max(2 L D^2 / (floor((k-1)/2) + 4), 2^-floor((k-1)/2) eps0)`.
pub fn convergence_bound(lipschitz: f64, diameter: f64, eps0: f64, k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let h = ((k - 1) / 2) as f64;
    Ok((2.0 * lipschitz * diameter * diameter / (h + 4.0)).max(0.5f64.powf(h) * eps0))
}

/// `f(x_k) - f(x_{k+1})` is at least this when the gap is `gap` and `x_k` is
/// `distance` from a minimizer.
pub fn guaranteed_progress(lipschitz: f64, gap: f64, distance: f64) -> f64 {
    if distance == 0.0 {
        return gap / 2.0;
    }
    ((gap / distance).powi(2) / (2.0 * lipschitz)).min(gap / 2.0)
}

/// `sum_i h_i (x_i - c_i)^2 / 2` over the box `[lo, hi]`, Euclidean norm.
/// The minimizer is `c` clamped into the box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxQuadratic {
    pub curvature: Vec<f64>,
    pub center: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// At least the largest curvature.
    pub lipschitz: f64,
}

impl BoxQuadratic {
    pub fn new(curvature: Vec<f64>, center: Vec<f64>, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let d = curvature.len();
        for len in [center.len(), lo.len(), hi.len()] {
            if len != d {
                return Err(Error::LengthMismatch { expected: d, got: len });
            }
        }
        if d == 0 || curvature.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidParameter("curvatures must be positive".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::InvalidParameter("box must have lo < hi".into()));
        }
        let lipschitz = curvature.iter().copied().fold(0.0, f64::max);
        Ok(BoxQuadratic {
            curvature,
            center,
            lo,
            hi,
            lipschitz,
        })
    }

    /// `(curvature / 2) x^2` on `[-1, 1]` with smoothness `lipschitz >= curvature`.
    pub fn one_dimensional(curvature: f64, lipschitz: f64) -> Result<Self> {
        if lipschitz < curvature {
            return Err(Error::InvalidParameter("lipschitz must dominate the curvature".into()));
        }
        let mut q = BoxQuadratic::new(vec![curvature], vec![0.0], vec![-1.0], vec![1.0])?;
        q.lipschitz = lipschitz;
        Ok(q)
    }

    pub fn minimizer(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| self.center[i].clamp(self.lo[i], self.hi[i]))
            .collect()
    }
}

impl CompositeProblem for BoxQuadratic {
    fn dim(&self) -> usize {
        self.curvature.len()
    }

    fn smooth(&self, x: &[f64]) -> f64 {
        (0..self.dim())
            .map(|i| 0.5 * self.curvature[i] * (x[i] - self.center[i]).powi(2))
            .sum()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|i| self.curvature[i] * (x[i] - self.center[i]))
            .collect()
    }

    fn nonsmooth(&self, x: &[f64]) -> f64 {
        if (0..self.dim()).all(|i| x[i] >= self.lo[i] && x[i] <= self.hi[i]) {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn prox(&self, grad: &[f64], x_k: &[f64]) -> Result<Vec<f64>> {
        Ok((0..self.dim())
            .map(|i| (x_k[i] - grad[i] / self.lipschitz).clamp(self.lo[i], self.hi[i]))
            .collect())
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn norm(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Linear cost `cost^T f` plus `||C^{-1} f||_inf` over `0 <= f_e / w_e <= upper`,
/// in the norm `||C^{-1} .||_inf`: the shape of the flow solver's proximal phase.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowProxProblem<'a> {
    pub graph: &'a DirectedGraph,
    pub cost: Vec<f64>,
    pub lipschitz: f64,
    pub upper: f64,
}

impl CompositeProblem for FlowProxProblem<'_> {
    fn dim(&self) -> usize {
        self.graph.m()
    }

    fn smooth(&self, f: &[f64]) -> f64 {
        self.cost.iter().zip(f).map(|(c, x)| c * x).sum()
    }

    fn gradient(&self, _f: &[f64]) -> Vec<f64> {
        self.cost.clone()
    }

    fn nonsmooth(&self, f: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (x, e) in f.iter().zip(self.graph.edges()) {
            let y = x / e.weight;
            if !(-1e-12..=self.upper * (1.0 + 1e-12)).contains(&y) {
                return f64::INFINITY;
            }
            worst = worst.max(y);
        }
        worst
    }

    fn prox(&self, grad: &[f64], f_k: &[f64]) -> Result<Vec<f64>> {
        Ok(proximal_step(self.graph, grad, f_k, self.lipschitz, self.upper))
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn diameter(&self) -> f64 {
        self.upper
    }

    fn norm(&self, f: &[f64]) -> f64 {
        f.iter()
            .zip(self.graph.edges())
            .map(|(x, e)| (x / e.weight).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_balanced, seeded_rng};
    use proptest::prelude::*;
    use rand::Rng;

    fn random_box_quadratic(seed: u64, d: usize) -> BoxQuadratic {
        let mut rng = seeded_rng(seed);
        let curvature = (0..d).map(|_| rng.random_range(0.1..5.0)).collect();
        let center = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let lo: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..0.0)).collect();
        let hi = lo.iter().map(|l| l + rng.random_range(0.5..3.0)).collect();
        BoxQuadratic::new(curvature, center, lo, hi).unwrap()
    }

    #[test]
    fn bound_formula() {
        assert_eq!(convergence_bound(1.0, 2.0, 3.0, 1).unwrap(), 3.0_f64.max(2.0));
        assert_eq!(convergence_bound(0.0, 1.0, 8.0, 5).unwrap(), 2.0);
        assert_eq!(convergence_bound(3.0, 0.0, 8.0, 7).unwrap(), 1.0);
        assert!(convergence_bound(1.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn one_dimensional_contracts_to_zero() {
        let q = BoxQuadratic::one_dimensional(1.0, 3.0).unwrap();
        let t = minimize(&q, &[1.0], 60).unwrap();
        for (k, x) in t.iterates.iter().enumerate() {
            assert!((x[0] - (2.0f64 / 3.0).powi(k as i32)).abs() < 1e-12);
        }
        let exact = BoxQuadratic::one_dimensional(2.0, 2.0).unwrap();
        assert_eq!(minimize(&exact, &[1.0], 1).unwrap().last(), &[0.0]);
    }

    #[test]
    fn optimal_start_is_stationary() {
        let q = random_box_quadratic(5, 4);
        let t = minimize(&q, &q.minimizer(), 10).unwrap();
        assert!(t.iterates.iter().all(|x| x == &q.minimizer()));
    }

    #[test]
    fn rejects_infeasible_start() {
        let q = BoxQuadratic::one_dimensional(1.0, 1.0).unwrap();
        assert!(minimize(&q, &[2.0], 3).is_err());
        assert!(minimize(&q, &[0.0, 0.0], 3).is_err());
    }

    #[test]
    fn flow_instance_reproduces_proximal_step() {
        let g = random_balanced(8, 8, 2.0, &mut seeded_rng(2));
        let mut rng = seeded_rng(9);
        let cost: Vec<f64> = (0..g.m()).map(|_| rng.random_range(-1.0..0.5)).collect();
        let p = FlowProxProblem {
            graph: &g,
            cost: cost.clone(),
            lipschitz: 4.0,
            upper: 6.0,
        };
        let f0: Vec<f64> = g
            .edges()
            .iter()
            .map(|e| e.weight * rng.random_range(0.0..6.0))
            .collect();
        let t = minimize(&p, &f0, 12).unwrap();
        let mut f = f0;
        for k in 1..=12 {
            f = proximal_step(&g, &cost, &f, 4.0, 6.0);
            assert_eq!(t.iterates[k], f);
            assert!(t.values[k] <= t.values[k - 1] + 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn descent_progress_and_bound(seed in any::<u64>(), d in 1usize..6, slack in 1.0f64..4.0) {
            let mut q = random_box_quadratic(seed, d);
            q.lipschitz *= slack;
            let x_star = q.minimizer();
            let f_star = q.objective(&x_star);
            let x0 = q.lo.clone();
            let t = minimize(&q, &x0, 200).unwrap();
            let eps0 = t.values[0] - f_star;
            for k in 0..200 {
                let gap = t.values[k] - f_star;
                let dist = q.norm(&t.iterates[k].iter().zip(&x_star).map(|(a, b)| a - b).collect::<Vec<_>>());
                prop_assert!(t.values[k + 1] <= t.values[k] + 1e-12);
                prop_assert!(t.values[k + 1] <= t.values[k] - guaranteed_progress(q.lipschitz, gap, dist) + 1e-12);
                let bound = convergence_bound(q.lipschitz, q.diameter(), eps0, k + 1).unwrap();
                prop_assert!(t.values[k + 1] - f_star <= bound + 1e-12);
            }
        }
    }
}
