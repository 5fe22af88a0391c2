//! Seeded random instance families.

use crate::graph::{Demand, DirectedGraph, Edge};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate.
pub type GraphRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent seed for stream `index` of a base seed (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0` with unit weights.
pub fn directed_cycle(n: usize) -> DirectedGraph {
    let edges = (0..n).map(|i| Edge::new(i, (i + 1) % n, 1.0)).collect();
    DirectedGraph::new(n, edges).expect("cycle is strongly connected")
}

/// Both orientations of every edge of an undirected edge list, each with the given weight.
pub fn bidirected(n: usize, undirected: &[(usize, usize, f64)]) -> DirectedGraph {
    let mut edges = Vec::with_capacity(2 * undirected.len());
    for &(u, v, w) in undirected {
        edges.push(Edge::new(u, v, w));
        edges.push(Edge::new(v, u, w));
    }
    DirectedGraph::with_any_connectivity(n, edges).expect("valid undirected edge list")
}

/// A Hamiltonian cycle through a random permutation plus each other ordered
/// pair independently with probability `p`. Weights are uniform in `[w_min, w_max]`.
pub fn random_strongly_connected(n: usize, p: f64, w_min: f64, w_max: f64, rng: &mut impl Rng) -> DirectedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    let mut present = vec![false; n * n];
    if n > 1 {
        for i in 0..n {
            let (u, v) = (perm[i], perm[(i + 1) % n]);
            if !present[u * n + v] {
                present[u * n + v] = true;
                edges.push(Edge::new(u, v, rng.random_range(w_min..=w_max)));
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && !present[u * n + v] && rng.random_bool(p) {
                present[u * n + v] = true;
                edges.push(Edge::new(u, v, rng.random_range(w_min..=w_max)));
            }
        }
    }
    DirectedGraph::new(n, edges).expect("Hamiltonian cycle makes the graph strongly connected")
}

/// Sum of `cycles` random simple cycles on top of a Hamiltonian cycle. Every
/// cycle carries one weight drawn uniformly from `[1, max_weight]`, so the
/// result is Eulerian. Lengths are 1.
pub fn random_eulerian(n: usize, cycles: usize, max_weight: f64, rng: &mut impl Rng) -> DirectedGraph {
    assert!(n >= 2, "Eulerian generator needs two vertices");
    let mut edges = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    push_cycle(&mut edges, &perm, rng.random_range(1.0..=max_weight));
    for _ in 0..cycles {
        let len = rng.random_range(2..=n);
        perm.shuffle(rng);
        let w = rng.random_range(1.0..=max_weight);
        push_cycle(&mut edges, &perm[..len], w);
    }
    DirectedGraph::new(n, edges).expect("contains a Hamiltonian cycle")
}

fn push_cycle(edges: &mut Vec<Edge>, vertices: &[usize], w: f64) {
    for i in 0..vertices.len() {
        edges.push(Edge::new(vertices[i], vertices[(i + 1) % vertices.len()], w));
    }
}

/// A random Eulerian graph whose edge weights are each multiplied by a factor
/// uniform in `[1, alpha]`. Every cut ratio is at most `alpha`.
pub fn random_balanced(n: usize, cycles: usize, alpha: f64, rng: &mut impl Rng) -> DirectedGraph {
    let g = random_eulerian(n, cycles, 4.0, rng);
    let weights: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| {
            e.weight
                * if alpha > 1.0 {
                    rng.random_range(1.0..=alpha)
                } else {
                    1.0
                }
        })
        .collect();
    let g = g.with_weights(&weights).expect("positive weights");
    DirectedGraph::new(g.n(), g.edges().to_vec()).expect("same topology")
}

/// Connected undirected graph: a random spanning tree plus each other pair
/// with probability `p`, unit weights.
pub fn random_connected_undirected(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(usize, usize, f64)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        let (u, v) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
        present[u * n + v] = true;
        edges.push((u, v, 1.0));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u * n + v] && rng.random_bool(p) {
                edges.push((u, v, 1.0));
            }
        }
    }
    edges
}

/// A demand with independent uniform entries in `[-1, 1]`, recentred to sum to zero.
pub fn random_demand(n: usize, rng: &mut impl Rng) -> Demand {
    let mut d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    d.iter_mut().for_each(|x| *x -= mean);
    let fix: f64 = d.iter().sum();
    d[0] -= fix;
    Demand(d)
}

/// Random single-source demand from `s`: nonnegative amounts at a random
/// subset of the other vertices.
pub fn random_single_source_demand(n: usize, s: usize, rng: &mut impl Rng) -> Demand {
    let mut d = vec![0.0; n];
    for (v, x) in d.iter_mut().enumerate() {
        if v != s && rng.random_bool(0.6) {
            *x = rng.random_range(0.0..=1.0);
        }
    }
    if d.iter().all(|&x| x == 0.0) {
        d[(s + 1) % n] = 1.0;
    }
    d[s] = -d.iter().sum::<f64>();
    Demand(d)
}

/// Unit-weight instance with a planted sparse cut: two halves of size `n/2`,
/// each a bidirected graph containing every pair with probability `p`
/// (plus a Hamiltonian path for connectivity), joined by `bridges` random
/// bidirected edges. Returns the graph and the indicator of the first half.
pub fn planted_cut(n: usize, p: f64, bridges: usize, rng: &mut impl Rng) -> (DirectedGraph, Vec<bool>) {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "planted cut needs an even number of vertices"
    );
    let half = n / 2;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let side: Vec<bool> = {
        let mut s = vec![false; n];
        perm[..half].iter().for_each(|&v| s[v] = true);
        s
    };
    let mut und = Vec::new();
    let mut present = vec![false; n * n];
    let mut add = |u: usize, v: usize, und: &mut Vec<(usize, usize, f64)>| {
        let (a, b) = (u.min(v), u.max(v));
        if a != b && !present[a * n + b] {
            present[a * n + b] = true;
            und.push((a, b, 1.0));
        }
    };
    for part in [&perm[..half], &perm[half..]] {
        for i in 1..part.len() {
            add(part[i - 1], part[i], &mut und);
        }
        for i in 0..part.len() {
            for j in i + 1..part.len() {
                if rng.random_bool(p) {
                    add(part[i], part[j], &mut und);
                }
            }
        }
    }
    for _ in 0..bridges.max(1) {
        let a = perm[rng.random_range(0..half)];
        let b = perm[half + rng.random_range(0..half)];
        add(a, b, &mut und);
    }
    let g = bidirected(n, &und);
    (
        DirectedGraph::new(n, g.edges().to_vec()).expect("halves are connected and bridged"),
        side,
    )
}

/// Residual graph of `(1 - eps)` times a maximum flow from 0 to `n - 1` in a
/// random connected undirected graph with weights uniform in `[1, 4]`. Each
/// undirected edge becomes two arcs and its net flow sits on one of them.
pub fn approximate_flow_residual(
    n: usize,
    p: f64,
    eps: f64,
    rng: &mut impl Rng,
) -> crate::error::Result<DirectedGraph> {
    if n < 2 || !(eps > 0.0 && eps <= 1.0) {
        return Err(crate::error::Error::InvalidParameter(
            "need n >= 2 and eps in (0, 1]".into(),
        ));
    }
    let und: Vec<(usize, usize, f64)> = random_connected_undirected(n, p, rng)
        .into_iter()
        .map(|(u, v, _)| (u, v, rng.random_range(1.0..=4.0)))
        .collect();
    let g = bidirected(n, &und);
    let max = crate::oracles::exact_max_flow(&g, 0, n - 1)?;
    let mut f = vec![0.0; g.m()];
    for i in 0..und.len() {
        let net = max.flow[2 * i] - max.flow[2 * i + 1];
        f[if net >= 0.0 { 2 * i } else { 2 * i + 1 }] = (1.0 - eps) * net.abs();
    }
    crate::balance::residual_graph(&g, &crate::graph::Flow(f))
}
