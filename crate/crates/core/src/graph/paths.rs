use super::DirectedGraph;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Distances and shortest-path predecessor edges from one or more sources.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    /// `f64::INFINITY` for unreachable vertices.
    pub dist: Vec<f64>,
    /// Edge used to reach each vertex; `None` for sources and unreachable vertices.
    pub pred: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Edge indices of the shortest path ending at `v`, in path order.
    pub fn path_to(&self, g: &DirectedGraph, v: usize) -> Option<Vec<usize>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(e) = self.pred[cur] {
            path.push(e);
            cur = g.edge(e).tail;
        }
        path.reverse();
        Some(path)
    }

    /// Largest finite distance.
    pub fn eccentricity(&self) -> f64 {
        self.dist.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct HeapItem {
    pub key: f64,
    pub tie: usize,
    pub vertex: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on (key, tie).
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.tie.cmp(&self.tie))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source Dijkstra under an explicit length vector aligned to the edges.
pub fn dijkstra(g: &DirectedGraph, source: usize, lengths: &[f64]) -> ShortestPaths {
    multi_source_dijkstra(g, &[(source, 0.0)], lengths)
}

/// Dijkstra from several sources, each with an initial distance.
pub fn multi_source_dijkstra(g: &DirectedGraph, sources: &[(usize, f64)], lengths: &[f64]) -> ShortestPaths {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &(s, d) in sources {
        if d < dist[s] {
            dist[s] = d;
            heap.push(HeapItem {
                key: d,
                tie: 0,
                vertex: s,
            });
        }
    }
    while let Some(HeapItem { key, vertex: u, .. }) = heap.pop() {
        if done[u] || key > dist[u] {
            continue;
        }
        done[u] = true;
        for &e in g.out_edges(u) {
            let v = g.edge(e).head;
            let nd = key + lengths[e];
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(e);
                heap.push(HeapItem {
                    key: nd,
                    tie: 0,
                    vertex: v,
                });
            }
        }
    }
    ShortestPaths { dist, pred }
}

/// Vertices reachable from `s` (along reversed edges when `reverse` is set).
pub fn reachable_from(g: &DirectedGraph, s: usize, reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        let adj = if reverse { g.in_edges(u) } else { g.out_edges(u) };
        for &e in adj {
            let v = if reverse { g.edge(e).tail } else { g.edge(e).head };
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Strongly connected components of the subgraph formed by the edges accepted
/// by `keep`. Returns a component id per vertex and the number of components.
/// Component ids are in reverse topological order of the condensation.
pub fn strongly_connected_components(g: &DirectedGraph, keep: impl Fn(usize) -> bool) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut ncomp = 0;
    // Explicit DFS stack of (vertex, next out-edge position).
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(u, pos)) = call.last() {
            let adj = g.out_edges(u);
            if pos < adj.len() {
                let e = adj[pos];
                call.last_mut().expect("nonempty").1 += 1;
                if !keep(e) {
                    continue;
                }
                let v = g.edge(e).head;
                if index[v] == usize::MAX {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == u {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    (comp, ncomp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn dijkstra_path_on_line() {
        let g = DirectedGraph::new(
            3,
            vec![
                Edge::with_length(0, 1, 1.0, 2.0),
                Edge::with_length(1, 2, 1.0, 3.0),
                Edge::with_length(2, 0, 1.0, 1.0),
                Edge::with_length(0, 2, 1.0, 10.0),
            ],
        )
        .unwrap();
        let sp = dijkstra(&g, 0, &g.lengths());
        assert_eq!(sp.dist, vec![0.0, 2.0, 5.0]);
        assert_eq!(sp.path_to(&g, 2), Some(vec![0, 1]));
        assert_eq!(sp.eccentricity(), 5.0);
    }

    #[test]
    fn scc_of_two_triangles_joined_one_way() {
        let g = DirectedGraph::with_any_connectivity(
            6,
            vec![
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, 1.0),
                Edge::new(2, 0, 1.0),
                Edge::new(3, 4, 1.0),
                Edge::new(4, 5, 1.0),
                Edge::new(5, 3, 1.0),
                Edge::new(2, 3, 1.0),
            ],
        )
        .unwrap();
        let (comp, k) = strongly_connected_components(&g, |_| true);
        assert_eq!(k, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[3], comp[5]);
        assert_ne!(comp[0], comp[3]);
        let (_, k) = strongly_connected_components(&g, |e| e != 6 && e != 2);
        assert_eq!(k, 4);
    }
}
