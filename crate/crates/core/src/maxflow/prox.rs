//! The proximal subproblem of the accelerated phase:
//! minimize `g^T f + (L/2) ||C^{-1}(f - f_k)||_inf^2 + ||C^{-1} f||_inf`
//! over the box `0 <= f_e / w_e <= U`.

use crate::graph::DirectedGraph;

/// Minimizer of the proximal subproblem. `grad` is the gradient of the smooth
/// part at `f_k`.
pub fn proximal_step(g: &DirectedGraph, grad: &[f64], f_k: &[f64], lipschitz: f64, upper: f64) -> Vec<f64> {
    let w: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
    let c: Vec<f64> = grad.iter().zip(&w).map(|(gr, w)| gr * w).collect();
    let y_k: Vec<f64> = f_k.iter().zip(&w).map(|(f, w)| (f / w).clamp(0.0, upper)).collect();
    let z_max = upper + y_k.iter().fold(0.0f64, |m, &y| m.max(y));
    let objective = |z: f64| {
        let y = inner_solution(&c, &y_k, z, upper);
        inner_value(&c, &y) + 0.5 * lipschitz * z * z
    };
    // Golden-section search; the objective is convex in z.
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, z_max);
    let (mut a, mut b) = (hi - ratio * (hi - lo), lo + ratio * (hi - lo));
    let (mut fa, mut fb) = (objective(a), objective(b));
    for _ in 0..200 {
        if hi - lo <= 1e-12 * z_max.max(1e-300) {
            break;
        }
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = objective(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = objective(b);
        }
    }
    let z = if objective(0.0) <= fa.min(fb) {
        0.0
    } else {
        0.5 * (lo + hi)
    };
    inner_solution(&c, &y_k, z, upper)
        .iter()
        .zip(&w)
        .map(|(y, w)| y * w)
        .collect()
}

fn inner_value(c: &[f64], y: &[f64]) -> f64 {
    c.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() + y.iter().fold(0.0f64, |m, &v| m.max(v))
}

/// For a fixed radius `z`, minimizes `c^T y + max_e y_e` over
/// `y_e in [max(0, y_k - z), min(U, y_k + z)]`. Coordinates with `c_e >= 0`
/// sit at their lower end; the others rise to a common level `t`, found by
/// scanning their upper ends in increasing order until the slope
/// `1 + sum c_e` over still-rising coordinates becomes nonnegative.
fn inner_solution(c: &[f64], y_k: &[f64], z: f64, upper: f64) -> Vec<f64> {
    let lo: Vec<f64> = y_k.iter().map(|&y| (y - z).max(0.0)).collect();
    let hi: Vec<f64> = y_k.iter().map(|&y| (y + z).min(upper)).collect();
    let t_min = lo.iter().fold(0.0f64, |m, &v| m.max(v));
    let mut rising: Vec<usize> = (0..c.len()).filter(|&e| c[e] < 0.0 && hi[e] > t_min).collect();
    rising.sort_by(|&a, &b| hi[a].total_cmp(&hi[b]));
    let mut slope = 1.0 + rising.iter().map(|&e| c[e]).sum::<f64>();
    let mut t = t_min;
    for &e in &rising {
        if slope >= 0.0 {
            break;
        }
        t = hi[e];
        slope -= c[e];
    }
    (0..c.len())
        .map(|e| if c[e] < 0.0 { hi[e].min(t).max(lo[e]) } else { lo[e] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use proptest::prelude::*;

    fn line_graph(m: usize) -> DirectedGraph {
        let edges = (0..m).map(|i| Edge::new(i, i + 1, 1.0 + i as f64)).collect();
        DirectedGraph::with_any_connectivity(m + 1, edges).unwrap()
    }

    fn objective(g: &DirectedGraph, grad: &[f64], f_k: &[f64], l: f64, f: &[f64]) -> f64 {
        let mut z = 0.0f64;
        let mut norm = 0.0f64;
        let mut lin = 0.0;
        for (i, e) in g.edges().iter().enumerate() {
            z = z.max((f[i] - f_k[i]).abs() / e.weight);
            norm = norm.max(f[i] / e.weight);
            lin += grad[i] * f[i];
        }
        lin + 0.5 * l * z * z + norm
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn no_feasible_perturbation_improves(
            grad in proptest::collection::vec(-2.0f64..2.0, 3),
            fk in proptest::collection::vec(0.0f64..3.0, 3),
            l in 0.5f64..4.0,
        ) {
            let g = line_graph(3);
            let upper = 5.0;
            let f = proximal_step(&g, &grad, &fk, l, upper);
            let best = objective(&g, &grad, &fk, l, &f);
            for (i, e) in g.edges().iter().enumerate() {
                prop_assert!(f[i] >= -1e-12 && f[i] <= upper * e.weight + 1e-9);
            }
            // Grid search over the box as a brute-force oracle.
            let steps = 24;
            for a in 0..=steps {
                for b in 0..=steps {
                    for c in 0..=steps {
                        let y = [a, b, c].map(|k| upper * k as f64 / steps as f64);
                        let cand: Vec<f64> = y.iter().zip(g.edges()).map(|(y, e)| y * e.weight).collect();
                        prop_assert!(best <= objective(&g, &grad, &fk, l, &cand) + 1e-7);
                    }
                }
            }
        }
    }
}
