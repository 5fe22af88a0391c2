//! Weighted, length-annotated directed graphs and the basic linear-algebraic
//! operations on them: edge-vertex incidence, congestion, cut weights and
//! threshold cuts of vertex potentials.
//!
//! Vertices are `0..n`. Edge indices follow insertion order and never change
//! after construction, so flows are plain vectors aligned to [`DirectedGraph::edges`].

mod io;
pub(crate) mod paths;

pub use io::{parse_edge_list, read_graph, to_edge_list, write_graph, GraphFormat, GraphRecord};
pub use paths::{dijkstra, multi_source_dijkstra, reachable_from, strongly_connected_components, ShortestPaths};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Deref, DerefMut};

/// Relative tolerance for flow conservation and demand balance checks.
pub const CONSERVATION_TOL: f64 = 1e-9;
/// Absolute tolerance used when comparing certificates against exact values.
pub const CERTIFICATE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
    #[serde(default = "unit_length")]
    pub length: f64,
}

fn unit_length() -> f64 {
    1.0
}

impl Edge {
    pub fn new(tail: usize, head: usize, weight: f64) -> Self {
        Edge {
            tail,
            head,
            weight,
            length: 1.0,
        }
    }

    pub fn with_length(tail: usize, head: usize, weight: f64, length: f64) -> Self {
        Edge {
            tail,
            head,
            weight,
            length,
        }
    }
}

/// A directed multigraph with positive edge weights (capacities) and positive
/// edge lengths. Self-loops are rejected; parallel and antiparallel edges are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    strongly_connected: bool,
}

impl DirectedGraph {
    /// Builds a graph and requires it to be strongly connected.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let g = Self::with_any_connectivity(n, edges)?;
        if !g.strongly_connected {
            return Err(Error::NotStronglyConnected);
        }
        Ok(g)
    }

    /// Builds a graph without requiring strong connectivity. Used for induced
    /// subgraphs, lower-bound instances and quantities that are defined on
    /// arbitrary digraphs.
    pub fn with_any_connectivity(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { edge: i, vertex: v, n });
                }
            }
            if e.tail == e.head {
                return Err(Error::SelfLoop(i));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::InvalidEdgeValue {
                    edge: i,
                    field: "weight",
                });
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(Error::InvalidEdgeValue {
                    edge: i,
                    field: "length",
                });
            }
            out_adj[e.tail].push(i);
            in_adj[e.head].push(i);
        }
        let mut g = DirectedGraph {
            n,
            edges,
            out_adj,
            in_adj,
            strongly_connected: false,
        };
        g.strongly_connected = g.compute_strong_connectivity();
        Ok(g)
    }

    fn compute_strong_connectivity(&self) -> bool {
        let fwd = reachable_from(self, 0, false);
        let bwd = reachable_from(self, 0, true);
        fwd.iter().all(|&x| x) && bwd.iter().all(|&x| x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Indices of edges leaving `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Indices of edges entering `v`.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.length).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).fold(f64::INFINITY, f64::min)
    }

    /// Same topology and weights with the given edge lengths.
    pub fn with_lengths(&self, lengths: &[f64]) -> Result<Self> {
        check_len(self.m(), lengths.len())?;
        let edges = self
            .edges
            .iter()
            .zip(lengths)
            .map(|(e, &l)| Edge { length: l, ..*e })
            .collect();
        Self::with_any_connectivity(self.n, edges)
    }

    /// Same topology and lengths with the given edge weights.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        check_len(self.m(), weights.len())?;
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &w)| Edge { weight: w, ..*e })
            .collect();
        Self::with_any_connectivity(self.n, edges)
    }

    /// Every edge reversed; edge `i` of the result is the reverse of edge `i`.
    pub fn reversed(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: e.head,
                head: e.tail,
                ..*e
            })
            .collect();
        Self::with_any_connectivity(self.n, edges).expect("reversal preserves validity")
    }

    /// Subgraph induced by `vertices` (in the given order). The result need not
    /// be strongly connected.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (t, h) = (local[e.tail], local[e.head]);
            if t != usize::MAX && h != usize::MAX {
                edges.push(Edge { tail: t, head: h, ..*e });
                edge_map.push(i);
            }
        }
        let graph = DirectedGraph::with_any_connectivity(vertices.len(), edges)
            .expect("induced subgraph of a valid graph is valid");
        Subgraph {
            graph,
            vertex_map: vertices.to_vec(),
            edge_map,
        }
    }
}

/// An induced subgraph together with the maps back to the parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: DirectedGraph,
    /// Local vertex index to parent vertex index.
    pub vertex_map: Vec<usize>,
    /// Local edge index to parent edge index.
    pub edge_map: Vec<usize>,
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Net demand per vertex. Positive entries are sinks, negative entries are sources.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Demand(pub Vec<f64>);

impl Demand {
    /// Checks that the entries are finite and sum to zero within [`CONSERVATION_TOL`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let sum: f64 = values.iter().sum();
        let scale: f64 = values.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        if values.iter().any(|x| !x.is_finite()) || sum.abs() > CONSERVATION_TOL * scale {
            return Err(Error::DemandNotBalanced { sum });
        }
        Ok(Demand(values))
    }

    pub fn zeros(n: usize) -> Self {
        Demand(vec![0.0; n])
    }

    /// One unit from `s` to `t`.
    pub fn unit(n: usize, s: usize, t: usize) -> Self {
        let mut d = vec![0.0; n];
        d[s] -= 1.0;
        d[t] += 1.0;
        Demand(d)
    }

    /// Sum of the demand over the members of `cut`.
    pub fn on_cut(&self, cut: &Cut) -> f64 {
        cut.vertices().map(|v| self.0[v]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Demand(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    /// Total positive demand.
    pub fn positive_mass(&self) -> f64 {
        self.0.iter().filter(|&&x| x > 0.0).sum()
    }
}

impl Deref for Demand {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Demand {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// A nonnegative amount of flow on every edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flow(pub Vec<f64>);

impl Flow {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidFlow(i));
        }
        Ok(Flow(values))
    }

    pub fn zeros(m: usize) -> Self {
        Flow(vec![0.0; m])
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Flow(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn add_assign_scaled(&mut self, other: &Flow, factor: f64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }
}

impl Deref for Flow {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Flow {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// A nonempty proper vertex subset `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cut {
    members: Vec<bool>,
}

impl Cut {
    pub fn new(members: Vec<bool>) -> Result<Self> {
        let k = members.iter().filter(|&&x| x).count();
        if k == 0 || k == members.len() {
            return Err(Error::ImproperCut);
        }
        Ok(Cut { members })
    }

    pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut members = vec![false; n];
        for &v in vertices {
            if v >= n {
                return Err(Error::BadVertex(v));
            }
            members[v] = true;
        }
        Cut::new(members)
    }

    /// Cut whose members are the set bits of `mask` (vertex `i` is bit `i`).
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Cut::new((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn complement(&self) -> Cut {
        Cut {
            members: self.members.iter().map(|x| !x).collect(),
        }
    }
}

/// Vertex demand `B f` of a flow: inflow minus outflow at every vertex.
pub fn incidence_apply(g: &DirectedGraph, f: &[f64]) -> Result<Demand> {
    check_len(g.m(), f.len())?;
    let mut b = vec![0.0; g.n()];
    for (e, &x) in g.edges().iter().zip(f) {
        b[e.head] += x;
        b[e.tail] -= x;
    }
    Ok(Demand(b))
}

/// `B^T v`: potential difference `v_head - v_tail` along every edge.
pub fn incidence_transpose_apply(g: &DirectedGraph, v: &[f64]) -> Vec<f64> {
    g.edges().iter().map(|e| v[e.head] - v[e.tail]).collect()
}

/// Maximum of `f_e / w_e`. Zero for an edgeless graph.
pub fn congestion(g: &DirectedGraph, f: &[f64]) -> f64 {
    g.edges().iter().zip(f).map(|(e, &x)| x / e.weight).fold(0.0, f64::max)
}

/// `(w(S, V\S), w(V\S, S))`: weight leaving and weight entering the cut.
pub fn cut_weight(g: &DirectedGraph, cut: &Cut) -> (f64, f64) {
    let (mut out, mut inc) = (0.0, 0.0);
    for e in g.edges() {
        match (cut.contains(e.tail), cut.contains(e.head)) {
            (true, false) => out += e.weight,
            (false, true) => inc += e.weight,
            _ => {}
        }
    }
    (out, inc)
}

/// `sum_e l(e) w(e)`.
pub fn volume(g: &DirectedGraph) -> f64 {
    g.edges().iter().map(|e| e.length * e.weight).sum()
}

/// Shortest path distances from `source` under the graph's edge lengths.
pub fn shortest_dist(g: &DirectedGraph, source: usize) -> Result<ShortestPaths> {
    if source >= g.n() {
        return Err(Error::BadVertex(source));
    }
    Ok(dijkstra(g, source, &g.lengths()))
}

/// Best threshold cut of a potential vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCut {
    pub cut: Cut,
    /// `b_S / w(V\S, S)`; infinite when no weight enters a cut with positive demand.
    pub ratio: f64,
}

/// Ratio `b_S / w(V\S, S)` with the conventions for empty in-weight.
pub fn demand_cut_ratio(demand_on_cut: f64, weight_in: f64) -> f64 {
    if weight_in > 0.0 {
        demand_on_cut / weight_in
    } else if demand_on_cut > 0.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

/// Among the threshold sets `{v : potential_v >= theta}` that are proper
/// subsets, returns one maximizing `b_S / w(V\S, S)`; ties go to the smaller set.
pub fn threshold_cut(g: &DirectedGraph, potentials: &[f64], b: &[f64]) -> Result<ThresholdCut> {
    check_len(g.n(), potentials.len())?;
    check_len(g.n(), b.len())?;
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &c| potentials[c].total_cmp(&potentials[a]).then(a.cmp(&c)));
    let mut inside = vec![false; n];
    let (mut demand, mut w_in) = (0.0, 0.0);
    let mut best: Option<(usize, f64)> = None;
    for k in 0..n - 1 {
        let v = order[k];
        inside[v] = true;
        demand += b[v];
        for &e in g.in_edges(v) {
            if !inside[g.edge(e).tail] {
                w_in += g.edge(e).weight;
            }
        }
        for &e in g.out_edges(v) {
            if inside[g.edge(e).head] {
                w_in -= g.edge(e).weight;
            }
        }
        if potentials[order[k + 1]] == potentials[v] {
            continue;
        }
        let ratio = demand_cut_ratio(demand, w_in.max(0.0));
        if best.is_none_or(|(_, r)| ratio > r) {
            best = Some((k + 1, ratio));
        }
    }
    let (size, _) = best.ok_or(Error::ImproperCut)?;
    let cut = Cut::from_vertices(n, &order[..size])?;
    let (_, w_in) = cut_weight(g, &cut);
    let ratio = demand_cut_ratio(demand_of(b, &cut), w_in);
    Ok(ThresholdCut { cut, ratio })
}

fn demand_of(b: &[f64], cut: &Cut) -> f64 {
    cut.vertices().map(|v| b[v]).sum()
}
