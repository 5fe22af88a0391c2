//! Directed low-radius decomposition by exponentially shifted shortest paths.
//!
//! Every vertex `v` draws a shift `x_v ~ Exp(beta)` and claims the vertices
//! `u` minimizing `d(v, u) - x_v`, ties broken by the smaller root index. Each
//! cluster then contains a shortest path from its root to every member, so the
//! realized radius is a plain distance. Draws whose radius exceeds `r` are
//! rejected.

use crate::error::{Error, Result};
use crate::generators::{derive_seed, seeded_rng};
use crate::graph::paths::HeapItem;
use crate::graph::{dijkstra, DirectedGraph, Edge};
use rand::Rng;
use std::collections::BinaryHeap;

/// Shift rate multiplier: `beta = rate * ln(n) / r`. At rate 10 the largest of
/// `n` shifts exceeds `r` with probability at most `n^-9`.
pub const DEFAULT_SHIFT_RATE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterOptions {
    pub shift_rate: f64,
    /// Defaults to `ceil(100 ln n)`.
    pub max_attempts: Option<usize>,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            shift_rate: DEFAULT_SHIFT_RATE,
            max_attempts: None,
        }
    }
}

/// A partition of the vertices into clusters, each with a root that reaches
/// every member inside the cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Cluster index of every vertex.
    pub assignment: Vec<usize>,
    /// Root vertex of every cluster.
    pub roots: Vec<usize>,
    /// Largest root-to-member distance inside each cluster.
    pub radii: Vec<f64>,
    /// Total weight of edges whose endpoints lie in different clusters.
    pub cut_weight: f64,
    /// Shift of every vertex; `None` for members of a rooted ball.
    pub shifts: Vec<Option<f64>>,
    /// Radius of the ball around the designated root, for rooted partitions.
    pub ball_radius: Option<f64>,
    pub attempts: usize,
}

impl Partition {
    pub fn cluster_count(&self) -> usize {
        self.roots.len()
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == cluster)
            .collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Whether edge `e` of `g` joins two clusters.
    pub fn is_cut(&self, g: &DirectedGraph, e: usize) -> bool {
        let edge = g.edge(e);
        self.assignment[edge.tail] != self.assignment[edge.head]
    }
}

fn inter_cluster_weight(g: &DirectedGraph, assignment: &[usize]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| assignment[e.tail] != assignment[e.head])
        .map(|e| e.weight)
        .sum()
}

/// Assigns every vertex to the root minimizing `(d(root, u) - x_root, root)`.
/// Returns the root of every vertex and its distance from that root.
fn shifted_assignment(g: &DirectedGraph, shifts: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let n = g.n();
    let mut key = vec![f64::INFINITY; n];
    let mut root = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::with_capacity(n);
    for v in 0..n {
        key[v] = -shifts[v];
        root[v] = v;
        heap.push(HeapItem {
            key: key[v],
            tie: v,
            vertex: v,
        });
    }
    while let Some(HeapItem {
        key: k,
        tie: r,
        vertex: u,
    }) = heap.pop()
    {
        if done[u] || (k, r) != (key[u], root[u]) {
            continue;
        }
        done[u] = true;
        for &e in g.out_edges(u) {
            let edge = g.edge(e);
            let v = edge.head;
            let nk = k + edge.length;
            if !done[v] && (nk < key[v] || (nk == key[v] && r < root[v])) {
                key[v] = nk;
                root[v] = r;
                heap.push(HeapItem {
                    key: nk,
                    tie: r,
                    vertex: v,
                });
            }
        }
    }
    let dist = (0..n).map(|u| key[u] + shifts[root[u]]).collect();
    (root, dist)
}

/// Clusters of radius at most `r`, resampling the shifts until every cluster fits.
pub fn cluster_directed(g: &DirectedGraph, r: f64, rng: &mut impl Rng, options: ClusterOptions) -> Result<Partition> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let n = g.n();
    if n == 1 {
        return Ok(Partition {
            assignment: vec![0],
            roots: vec![0],
            radii: vec![0.0],
            cut_weight: 0.0,
            shifts: vec![Some(0.0)],
            ball_radius: None,
            attempts: 1,
        });
    }
    let ln_n = (n as f64).ln();
    let beta = options.shift_rate * ln_n / r;
    let max_attempts = options.max_attempts.unwrap_or((100.0 * ln_n).ceil() as usize).max(1);
    for attempt in 1..=max_attempts {
        let shifts: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln() / beta).collect();
        let (root_of, dist) = shifted_assignment(g, &shifts);
        let mut cluster_of_root = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for v in 0..n {
            if root_of[v] == v {
                cluster_of_root[v] = roots.len();
                roots.push(v);
            }
        }
        let assignment: Vec<usize> = root_of.iter().map(|&rt| cluster_of_root[rt]).collect();
        let mut radii = vec![0.0f64; roots.len()];
        for v in 0..n {
            radii[assignment[v]] = radii[assignment[v]].max(dist[v]);
        }
        if radii.iter().all(|&x| x <= r) {
            return Ok(Partition {
                cut_weight: inter_cluster_weight(g, &assignment),
                assignment,
                roots,
                radii,
                shifts: shifts.into_iter().map(Some).collect(),
                ball_radius: None,
                attempts: attempt,
            });
        }
    }
    Err(Error::RetryLimit(max_attempts))
}

/// Cluster 0 is the ball of radius `r' ~ U[0, r]` around `s`; the remaining
/// vertices are clustered with [`cluster_directed`] on their induced subgraph.
pub fn cluster_directed_rooted(
    g: &DirectedGraph,
    s: usize,
    r: f64,
    rng: &mut impl Rng,
    options: ClusterOptions,
) -> Result<Partition> {
    if s >= g.n() {
        return Err(Error::BadVertex(s));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let n = g.n();
    let ball_radius = rng.random::<f64>() * r;
    let sp = dijkstra(g, s, &g.lengths());
    let in_ball: Vec<bool> = sp.dist.iter().map(|&d| d <= ball_radius).collect();
    let rest: Vec<usize> = (0..n).filter(|&v| !in_ball[v]).collect();
    let mut assignment = vec![0usize; n];
    let mut roots = vec![s];
    let mut radii = vec![(0..n).filter(|&v| in_ball[v]).map(|v| sp.dist[v]).fold(0.0, f64::max)];
    let mut shifts = vec![None; n];
    let mut attempts = 1;
    if !rest.is_empty() {
        let sub = g.induced_subgraph(&rest);
        let inner = cluster_directed(&sub.graph, r, rng, options)?;
        attempts = inner.attempts;
        for (local, &v) in rest.iter().enumerate() {
            assignment[v] = 1 + inner.assignment[local];
            shifts[v] = inner.shifts[local];
        }
        roots.extend(inner.roots.iter().map(|&x| rest[x]));
        radii.extend(&inner.radii);
    }
    Ok(Partition {
        cut_weight: inter_cluster_weight(g, &assignment),
        assignment,
        roots,
        radii,
        shifts,
        ball_radius: Some(ball_radius),
        attempts,
    })
}

/// Mean over `trials` independent partitions of
/// `(#cut cycle edges) * r / (length(C) * ln n)` for a cycle given by edge indices.
pub fn cycle_cut_statistic(
    g: &DirectedGraph,
    r: f64,
    cycle: &[usize],
    trials: usize,
    seed: u64,
    options: ClusterOptions,
) -> Result<f64> {
    if cycle.is_empty() || trials == 0 {
        return Err(Error::InvalidParameter(
            "need a nonempty cycle and at least one trial".into(),
        ));
    }
    let length: f64 = cycle.iter().map(|&e| g.edge(e).length).sum();
    let ln_n = (g.n().max(2) as f64).ln();
    let mut total = 0.0;
    for t in 0..trials {
        let mut rng = seeded_rng(derive_seed(seed, t as u64));
        let p = cluster_directed(g, r, &mut rng, options)?;
        let cut = cycle.iter().filter(|&&e| p.is_cut(g, e)).count() as f64;
        total += cut * r / (length * ln_n);
    }
    Ok(total / trials as f64)
}

/// A long directed cycle with a bidirected star hanging off one cycle vertex.
#[derive(Debug, Clone)]
pub struct StarCycleInstance {
    pub graph: DirectedGraph,
    /// Edge indices of the cycle, in cycle order.
    pub cycle: Vec<usize>,
    /// The star center on the cycle.
    pub center: usize,
    /// The cycle predecessor of the center.
    pub predecessor: usize,
    /// Index of the cycle edge `predecessor -> center`.
    pub entry_edge: usize,
    /// The clustering radius `2^k`.
    pub radius: f64,
}

/// Directed cycle of `3^k` unit edges and `leaves` leaves attached to cycle
/// vertex 0 by edges in both directions; the radius is `2^k`.
pub fn star_cycle_instance(k: u32, leaves: usize) -> Result<StarCycleInstance> {
    if k == 0 || k > 12 {
        return Err(Error::InvalidParameter(format!("k must lie in 1..=12, got {k}")));
    }
    let len = 3usize.pow(k);
    let mut edges: Vec<Edge> = (0..len).map(|i| Edge::new(i, (i + 1) % len, 1.0)).collect();
    for leaf in 0..leaves {
        edges.push(Edge::new(0, len + leaf, 1.0));
        edges.push(Edge::new(len + leaf, 0, 1.0));
    }
    let graph = DirectedGraph::new(len + leaves, edges)?;
    Ok(StarCycleInstance {
        graph,
        cycle: (0..len).collect(),
        center: 0,
        predecessor: len - 1,
        entry_edge: len - 1,
        radius: 2f64.powi(k as i32),
    })
}
