//! The congestion approximator with one row per proper cut.

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::maxflow::CongestionApproximator;

/// Rows are the indicators of all proper cuts `S`, scaled by
/// `1 / max(w(V\S, S), w(S, V\S))`. The sup-norm of the two-sided scaling
/// never exceeds `OPT_b`, and `OPT_b <= bal(G) ||R b||_inf`, so the quality is
/// exactly the imbalance of the graph; it is 1 on Eulerian graphs.
#[derive(Debug, Clone)]
pub struct AllCutsApproximator {
    n: usize,
    /// Scale of the row for mask `S`, stored at index `S - 1`.
    inv_scale: Vec<f64>,
    quality: f64,
}

pub const ALL_CUTS_MAX_VERTICES: usize = 20;

pub fn all_cuts_congestion_approximator(g: &DirectedGraph) -> Result<AllCutsApproximator> {
    let n = g.n();
    if n > ALL_CUTS_MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "all-cuts approximator is limited to {ALL_CUTS_MAX_VERTICES} vertices"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "all-cuts approximator needs two vertices".into(),
        ));
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let full = (1usize << n) - 1;
    let mut inv_scale = Vec::with_capacity(full - 1);
    let mut quality = 1.0f64;
    for mask in 1..full {
        let (mut w_in, mut w_out) = (0.0, 0.0);
        for e in g.edges() {
            let (t, h) = (mask >> e.tail & 1 == 1, mask >> e.head & 1 == 1);
            if h && !t {
                w_in += e.weight;
            } else if t && !h {
                w_out += e.weight;
            }
        }
        quality = quality.max(w_out / w_in);
        inv_scale.push(1.0 / w_in.max(w_out));
    }
    Ok(AllCutsApproximator { n, inv_scale, quality })
}

impl CongestionApproximator for AllCutsApproximator {
    fn n(&self) -> usize {
        self.n
    }

    fn rows(&self) -> usize {
        self.inv_scale.len()
    }

    fn apply(&self, b: &[f64], out: &mut [f64]) {
        let full = (1usize << self.n) - 1;
        let mut sums = vec![0.0; full];
        for mask in 1..full {
            let low = mask & mask.wrapping_sub(1);
            sums[mask] = sums[low] + b[mask.trailing_zeros() as usize];
            out[mask - 1] = sums[mask] * self.inv_scale[mask - 1];
        }
    }

    fn apply_transpose(&self, p: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        let full = (1usize << self.n) - 1;
        for mask in 1..full {
            let q = p[mask - 1] * self.inv_scale[mask - 1];
            if q == 0.0 {
                continue;
            }
            let mut bits = mask;
            while bits != 0 {
                out[bits.trailing_zeros() as usize] += q;
                bits &= bits - 1;
            }
        }
    }

    fn quality(&self) -> f64 {
        self.quality
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_demand, random_eulerian, seeded_rng};
    use crate::graph::{cut_weight, Cut};
    use crate::oracles::exact_min_congestion;
    use crate::testing::random_strong_graph;
    use proptest::prelude::*;

    #[test]
    fn transpose_is_adjoint() {
        let (g, b) = random_strong_graph(11, 6);
        let r = all_cuts_congestion_approximator(&g).unwrap();
        let p: Vec<f64> = (0..r.rows()).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
        let mut rb = vec![0.0; r.rows()];
        r.apply(&b, &mut rb);
        let mut rtp = vec![0.0; 6];
        r.apply_transpose(&p, &mut rtp);
        let lhs: f64 = rb.iter().zip(&p).map(|(a, c)| a * c).sum();
        let rhs: f64 = rtp.iter().zip(b.iter()).map(|(a, c)| a * c).sum();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn exact_on_eulerian_graphs() {
        let mut rng = seeded_rng(21);
        for _ in 0..20 {
            let g = random_eulerian(7, 6, 3.0, &mut rng);
            let r = all_cuts_congestion_approximator(&g).unwrap();
            assert!((r.quality() - 1.0).abs() < 1e-12);
            let b = random_demand(7, &mut rng);
            let opt = exact_min_congestion(&g, &b).unwrap().value;
            assert!((r.norm(&b) / opt - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn one_sided_scaling_overestimates_on_unbalanced_graphs() {
        // Scaling every cut by the entering weight alone gives ||Rb|| =
        // max(OPT_b, OPT_-b), which exceeds OPT_b when the graph is unbalanced.
        let g = DirectedGraph::new(
            2,
            vec![crate::graph::Edge::new(0, 1, 4.0), crate::graph::Edge::new(1, 0, 1.0)],
        )
        .unwrap();
        let b = [-1.0, 1.0];
        let opt = exact_min_congestion(&g, &crate::graph::Demand(b.to_vec()))
            .unwrap()
            .value;
        let s = Cut::from_vertices(2, &[0]).unwrap();
        let (_, w_in) = cut_weight(&g, &s);
        let one_sided = (b[0] / w_in).abs();
        assert!(one_sided > opt);
        let r = all_cuts_congestion_approximator(&g).unwrap();
        assert!(r.norm(&b) <= opt + 1e-12);
        assert_eq!(r.quality(), 4.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sandwich_with_imbalance(seed in any::<u64>(), n in 2usize..8) {
            let (g, b) = random_strong_graph(seed, n);
            let r = all_cuts_congestion_approximator(&g).unwrap();
            let opt = exact_min_congestion(&g, &b).unwrap().value;
            let norm = r.norm(&b);
            prop_assert!(norm <= opt * (1.0 + 1e-9) + 1e-12);
            prop_assert!(opt <= r.quality() * norm * (1.0 + 1e-9) + 1e-12);
        }
    }
}
