//! Low-stretch arborescences built by recursive rooted clustering, plus the
//! stretch and load accounting over the undirected tree metric.

use crate::decomposition::{cluster_directed_rooted, ClusterOptions};
use crate::error::{Error, Result};
use crate::graph::{dijkstra, strongly_connected_components, DirectedGraph, Edge};
use rand::Rng;

/// Default `c` in the per-level radius `r' = r / (c ln n)`.
pub const DEFAULT_SHRINK_CONSTANT: f64 = 8.0;

/// A graph whose short-arc strongly connected components are merged and whose
/// long arcs are capped.
#[derive(Debug, Clone)]
pub struct CollapsedGraph {
    pub graph: DirectedGraph,
    /// Supervertex of every original vertex.
    pub supervertex: Vec<usize>,
    /// Original edge behind every quotient edge.
    pub edge_origin: Vec<usize>,
    pub x_l: f64,
    pub x_r: f64,
}

/// Merges vertices that reach each other along arcs of length at most `x_l`
/// and caps every remaining arc length at `x_r`. Arcs inside a supervertex are
/// dropped; parallel arcs are kept.
pub fn collapse(g: &DirectedGraph, x_l: f64, x_r: f64) -> Result<CollapsedGraph> {
    if !(x_l > 0.0 && x_l < x_r) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < x_l < x_r, got [{x_l}, {x_r}]"
        )));
    }
    let (supervertex, count) = strongly_connected_components(g, |e| g.edge(e).length <= x_l);
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (t, h) = (supervertex[e.tail], supervertex[e.head]);
        if t != h {
            edges.push(Edge::with_length(t, h, e.weight, e.length.min(x_r)));
            edge_origin.push(i);
        }
    }
    let graph = DirectedGraph::with_any_connectivity(count, edges)?;
    Ok(CollapsedGraph {
        graph,
        supervertex,
        edge_origin,
        x_l,
        x_r,
    })
}

/// Arc from `parent` into a vertex, realized in the graph by `witness`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeArc {
    pub parent: usize,
    pub length: f64,
    /// Edge indices of a `parent -> child` path whose lengths sum to `length`.
    pub witness: Vec<usize>,
}

/// Spanning arborescence rooted at `root`; `arcs[v]` is the arc entering `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arborescence {
    root: usize,
    arcs: Vec<Option<TreeArc>>,
    levels: usize,
}

impl Arborescence {
    /// Builds an arborescence from per-vertex entering arcs. The root has none.
    pub fn from_arcs(root: usize, arcs: Vec<Option<TreeArc>>) -> Result<Self> {
        let t = Arborescence { root, arcs, levels: 0 };
        t.topological_order()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn arc(&self, v: usize) -> Option<&TreeArc> {
        self.arcs[v].as_ref()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.arcs[v].as_ref().map(|a| a.parent)
    }

    /// Recursion levels used to build the tree; 0 for trees given directly.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Vertices with every parent before its children.
    pub fn order(&self) -> Vec<usize> {
        self.topological_order().expect("validated at construction")
    }

    fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.arcs.len();
        if self.root >= n {
            return Err(Error::BadVertex(self.root));
        }
        let mut children = vec![Vec::new(); n];
        for (v, arc) in self.arcs.iter().enumerate() {
            match arc {
                Some(a) if v != self.root && a.parent < n => children[a.parent].push(v),
                None if v == self.root => {}
                _ => return Err(Error::Precondition(format!("vertex {v} has an invalid parent"))),
            }
        }
        let mut order = vec![self.root];
        let mut i = 0;
        while i < order.len() {
            order.extend_from_slice(&children[order[i]]);
            i += 1;
        }
        if order.len() != n {
            return Err(Error::Precondition("parent map contains a cycle".into()));
        }
        Ok(order)
    }

    /// Tree distance from the root to every vertex.
    pub fn root_distances(&self) -> Vec<f64> {
        let mut dist = vec![0.0; self.n()];
        for v in self.order() {
            if let Some(a) = &self.arcs[v] {
                dist[v] = dist[a.parent] + a.length;
            }
        }
        dist
    }

    /// Graph edges of the root-to-`v` walk obtained by concatenating witnesses.
    pub fn path_edges(&self, v: usize) -> Vec<usize> {
        let mut segments = Vec::new();
        let mut cur = v;
        while let Some(a) = &self.arcs[cur] {
            segments.push(&a.witness);
            cur = a.parent;
        }
        segments.into_iter().rev().flatten().copied().collect()
    }

    /// Checks that every witness is a `parent -> child` path in `g` whose
    /// length matches the arc length within `1e-9` relative.
    pub fn validate(&self, g: &DirectedGraph) -> Result<()> {
        check_vertex_count(g, self)?;
        for (v, arc) in self.arcs.iter().enumerate() {
            let Some(a) = arc else { continue };
            let mut cur = a.parent;
            let mut len = 0.0;
            for &e in &a.witness {
                let edge = g.edges().get(e).ok_or(Error::BadVertex(e))?;
                if edge.tail != cur {
                    return Err(Error::Precondition(format!("witness of arc into {v} is not a path")));
                }
                len += edge.length;
                cur = edge.head;
            }
            if cur != v || a.witness.is_empty() {
                return Err(Error::Precondition(format!("witness of arc into {v} ends elsewhere")));
            }
            if (len - a.length).abs() > 1e-9 * a.length.max(1e-300) {
                return Err(Error::Precondition(format!(
                    "witness of arc into {v} has length {len}, arc has {}",
                    a.length
                )));
            }
        }
        Ok(())
    }
}

fn check_vertex_count(g: &DirectedGraph, t: &Arborescence) -> Result<()> {
    if g.n() != t.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: t.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArborescenceOptions {
    pub shrink_constant: f64,
    pub cluster: ClusterOptions,
}

impl Default for ArborescenceOptions {
    fn default() -> Self {
        ArborescenceOptions {
            shrink_constant: DEFAULT_SHRINK_CONSTANT,
            cluster: ClusterOptions::default(),
        }
    }
}

/// Low-stretch arborescence rooted at `s`, using the edge lengths of `g`.
///
/// Each level collapses to `[r'/n, 2r']`, cuts off a random ball around the
/// root, clusters the rest, recurses inside every cluster from its center and
/// hangs the centers off the root by shortest paths. Cluster radii shrink by a
/// factor `c ln n / 2` per level.
pub fn find_arborescence(
    g: &DirectedGraph,
    s: usize,
    rng: &mut impl Rng,
    options: ArborescenceOptions,
) -> Result<Arborescence> {
    let n = g.n();
    if s >= n {
        return Err(Error::BadVertex(s));
    }
    let shrink = options.shrink_constant * std::f64::consts::LN_2 / 2.0;
    if !(shrink > 1.0 && shrink.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "shrink constant must exceed 2/ln 2, got {}",
            options.shrink_constant
        )));
    }
    let sp = dijkstra(g, s, &g.lengths());
    if let Some(v) = sp.dist.iter().position(|d| !d.is_finite()) {
        return Err(Error::Unreachable { from: s, to: v });
    }
    let min_length = g.edges().iter().map(|e| e.length).fold(f64::INFINITY, f64::min);
    let max_levels = if n == 1 {
        1
    } else {
        ((sp.eccentricity() / min_length).ln() / shrink.ln()).floor() as usize + 2
    };
    let mut builder = Builder {
        options,
        rng,
        arcs: vec![None; n],
        levels: 0,
        max_levels,
        lengths: g.lengths(),
    };
    let vmap: Vec<usize> = (0..n).collect();
    let emap: Vec<usize> = (0..g.m()).collect();
    builder.build(g, s, &vmap, &emap, 1)?;
    Ok(Arborescence {
        root: s,
        arcs: builder.arcs,
        levels: builder.levels,
    })
}

struct Builder<'a, R> {
    options: ArborescenceOptions,
    rng: &'a mut R,
    arcs: Vec<Option<TreeArc>>,
    levels: usize,
    max_levels: usize,
    lengths: Vec<f64>,
}

impl<R: Rng> Builder<'_, R> {
    fn build(&mut self, g: &DirectedGraph, s: usize, vmap: &[usize], emap: &[usize], level: usize) -> Result<()> {
        self.levels = self.levels.max(level);
        assert!(
            level <= self.max_levels,
            "recursion depth {level} exceeds the bound {}",
            self.max_levels
        );
        let n = g.n();
        if n == 1 {
            return Ok(());
        }
        let sp = dijkstra(g, s, &g.lengths());
        let r = sp.eccentricity();
        let r_prime = r / (self.options.shrink_constant * (n as f64).ln());
        let collapsed = collapse(g, r_prime / n as f64, 2.0 * r_prime)?;
        let root = collapsed.supervertex[s];
        let partition = cluster_directed_rooted(&collapsed.graph, root, r_prime, self.rng, self.options.cluster)?;
        let k = partition.cluster_count();
        let mut members = vec![Vec::new(); k];
        for v in 0..n {
            members[partition.assignment[collapsed.supervertex[v]]].push(v);
        }
        debug_assert!(members.iter().all(|c| c.len() < n), "ball never covers a whole level");
        for (i, cluster) in members.iter().enumerate() {
            let center = if i == 0 {
                s
            } else {
                let root_super = partition.roots[i];
                *cluster
                    .iter()
                    .filter(|&&v| collapsed.supervertex[v] == root_super)
                    .min_by(|&&a, &&b| sp.dist[a].total_cmp(&sp.dist[b]).then(a.cmp(&b)))
                    .expect("cluster root supervertex is nonempty")
            };
            if i > 0 {
                let witness: Vec<usize> = sp
                    .path_to(g, center)
                    .expect("all vertices reachable")
                    .iter()
                    .map(|&e| emap[e])
                    .collect();
                let length = witness.iter().map(|&e| self.lengths[e]).sum();
                self.arcs[vmap[center]] = Some(TreeArc {
                    parent: vmap[s],
                    length,
                    witness,
                });
            }
            let sub = g.induced_subgraph(cluster);
            let local_center = cluster.iter().position(|&v| v == center).expect("center is a member");
            let sub_vmap: Vec<usize> = sub.vertex_map.iter().map(|&v| vmap[v]).collect();
            let sub_emap: Vec<usize> = sub.edge_map.iter().map(|&e| emap[e]).collect();
            self.build(&sub.graph, local_center, &sub_vmap, &sub_emap, level + 1)?;
        }
        Ok(())
    }
}

/// Binary-lifting ancestor table for tree distance queries.
struct TreeMetric {
    up: Vec<Vec<usize>>,
    hops: Vec<usize>,
    dist: Vec<f64>,
}

impl TreeMetric {
    fn new(t: &Arborescence) -> Self {
        let n = t.n();
        let order = t.order();
        let mut hops = vec![0usize; n];
        let mut parent = vec![t.root; n];
        for &v in &order {
            if let Some(p) = t.parent(v) {
                parent[v] = p;
                hops[v] = hops[p] + 1;
            }
        }
        let mut up = vec![parent];
        while (1usize << up.len()) < n {
            let prev = up.last().expect("nonempty");
            up.push((0..n).map(|v| prev[prev[v]]).collect());
        }
        TreeMetric {
            up,
            hops,
            dist: t.root_distances(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        if self.hops[a] < self.hops[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let diff = self.hops[a] - self.hops[b];
        for (j, row) in self.up.iter().enumerate() {
            if diff >> j & 1 == 1 {
                a = row[a];
            }
        }
        if a == b {
            return a;
        }
        for row in self.up.iter().rev() {
            if row[a] != row[b] {
                a = row[a];
                b = row[b];
            }
        }
        self.up[0][a]
    }

    fn distance(&self, a: usize, b: usize) -> f64 {
        let c = self.lca(a, b);
        self.dist[a] + self.dist[b] - 2.0 * self.dist[c]
    }
}

/// Distance between `a` and `b` in the undirected tree underlying `t`.
pub fn tree_distance(t: &Arborescence, a: usize, b: usize) -> f64 {
    TreeMetric::new(t).distance(a, b)
}

/// `sum over edges (u, v) of w(u, v) * d_T(u, v)`.
pub fn total_stretch(g: &DirectedGraph, t: &Arborescence) -> Result<f64> {
    check_vertex_count(g, t)?;
    let metric = TreeMetric::new(t);
    Ok(g.edges()
        .iter()
        .map(|e| e.weight * metric.distance(e.tail, e.head))
        .sum())
}

/// Load of every tree arc, indexed by the arc's child vertex (0 at the root):
/// the total weight of graph edges whose undirected tree path uses the arc.
/// Satisfies `sum_v load[v] * length(v) = total_stretch`.
pub fn tree_load(g: &DirectedGraph, t: &Arborescence) -> Result<Vec<f64>> {
    check_vertex_count(g, t)?;
    let metric = TreeMetric::new(t);
    let mut acc = vec![0.0; t.n()];
    for e in g.edges() {
        let c = metric.lca(e.tail, e.head);
        acc[e.tail] += e.weight;
        acc[e.head] += e.weight;
        acc[c] -= 2.0 * e.weight;
    }
    for &v in t.order().iter().rev() {
        if let Some(p) = t.parent(v) {
            acc[p] += acc[v];
        }
    }
    acc[t.root] = 0.0;
    Ok(acc)
}

/// Tree-arc loads pushed onto the graph edges of the witness paths. A graph
/// edge collects the load of every arc whose witness uses it.
pub fn edge_load(g: &DirectedGraph, t: &Arborescence) -> Result<Vec<f64>> {
    let arc_load = tree_load(g, t)?;
    let mut load = vec![0.0; g.m()];
    for v in 0..t.n() {
        if let Some(a) = t.arc(v) {
            for &e in &a.witness {
                load[e] += arc_load[v];
            }
        }
    }
    Ok(load)
}
