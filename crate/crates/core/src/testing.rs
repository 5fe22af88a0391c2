use crate::generators::{random_demand, random_strongly_connected, seeded_rng};
use crate::graph::{Demand, DirectedGraph};

/// A random strongly connected graph on `n` vertices with a random demand.
pub fn random_strong_graph(seed: u64, n: usize) -> (DirectedGraph, Demand) {
    let mut rng = seeded_rng(seed);
    let g = random_strongly_connected(n, 0.35, 0.5, 4.0, &mut rng);
    let b = random_demand(n, &mut rng);
    (g, b)
}
