use super::simplex::{solve_lp, LinearProgram, LpOutcome};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Flow};

/// Optimal fractional multicommodity routing.
#[derive(Debug, Clone, PartialEq)]
pub struct MulticommoditySolution {
    /// Minimum over all routings of the maximum edge congestion.
    pub value: f64,
    /// One aggregated flow per distinct source, in increasing source order.
    pub flows: Vec<(usize, Flow)>,
}

/// Minimum congestion for routing `amount` from `s` to `t` for every triple,
/// simultaneously. Commodities with a common source are merged, which does not
/// change the optimum. Intended for small instances.
pub fn optimal_multicommodity_congestion(
    g: &DirectedGraph,
    pairs: &[(usize, usize, f64)],
) -> Result<MulticommoditySolution> {
    let (n, m) = (g.n(), g.m());
    let mut sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    sources.sort_unstable();
    sources.dedup();
    let mut demand = vec![vec![0.0; n]; sources.len()];
    for &(s, t, a) in pairs {
        if s >= n || t >= n {
            return Err(Error::BadVertex(s.max(t)));
        }
        let k = sources.binary_search(&s).expect("source listed");
        demand[k][t] += a;
        demand[k][s] -= a;
    }
    let nv = sources.len() * m + 1;
    let lambda = nv - 1;
    let mut lp = LinearProgram {
        c: vec![0.0; nv],
        ..Default::default()
    };
    lp.c[lambda] = 1.0;
    for (k, &s) in sources.iter().enumerate() {
        for v in (0..n).filter(|&v| v != s) {
            let mut row = vec![0.0; nv];
            for &e in g.in_edges(v) {
                row[k * m + e] += 1.0;
            }
            for &e in g.out_edges(v) {
                row[k * m + e] -= 1.0;
            }
            lp.a_eq.push(row);
            lp.b_eq.push(demand[k][v]);
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let mut row = vec![0.0; nv];
        for k in 0..sources.len() {
            row[k * m + e] = 1.0;
        }
        row[lambda] = -edge.weight;
        lp.a_ub.push(row);
        lp.b_ub.push(0.0);
    }
    match solve_lp(&lp) {
        LpOutcome::Optimal { x, value } => Ok(MulticommoditySolution {
            value,
            flows: sources
                .iter()
                .enumerate()
                .map(|(k, &s)| (s, Flow(x[k * m..(k + 1) * m].to_vec())))
                .collect(),
        }),
        LpOutcome::Infeasible => Err(Error::NotRoutable),
        LpOutcome::Unbounded => unreachable!("congestion is bounded below by zero"),
    }
}
