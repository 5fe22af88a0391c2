//! Maximum-bottleneck arborescences: every tree path from (or to) the root has
//! the largest possible minimum edge weight among all paths with the same
//! endpoints. Routing a demand through the in-tree to the root and then out
//! through the out-tree costs at most a factor `m * n` over the optimum.

use crate::error::{Error, Result};
use crate::graph::{Demand, DirectedGraph, Flow};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, PartialEq)]
struct Widest {
    width: f64,
    vertex: usize,
}

impl Eq for Widest {}

impl Ord for Widest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .total_cmp(&other.width)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Widest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parent edge of every vertex in a widest-path arborescence rooted at `root`,
/// with the vertices in settlement order. With `inward`, tree edges point
/// toward the root.
pub fn widest_arborescence(g: &DirectedGraph, root: usize, inward: bool) -> Result<(Vec<Option<usize>>, Vec<usize>)> {
    let n = g.n();
    if root >= n {
        return Err(Error::BadVertex(root));
    }
    let mut width = vec![f64::NEG_INFINITY; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    width[root] = f64::INFINITY;
    let mut heap = BinaryHeap::from([Widest {
        width: f64::INFINITY,
        vertex: root,
    }]);
    while let Some(Widest { width: wu, vertex: u }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        order.push(u);
        let adj = if inward { g.in_edges(u) } else { g.out_edges(u) };
        for &e in adj {
            let edge = g.edge(e);
            let v = if inward { edge.tail } else { edge.head };
            let cand = wu.min(edge.weight);
            if !done[v] && cand > width[v] {
                width[v] = cand;
                parent[v] = Some(e);
                heap.push(Widest { width: cand, vertex: v });
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotStronglyConnected);
    }
    Ok((parent, order))
}

/// Routes any demand through a root: sources send to the root along the
/// inward widest tree, the root forwards to sinks along the outward one.
#[derive(Debug, Clone, PartialEq)]
pub struct CrudeRouter {
    pub root: usize,
    out_parent: Vec<Option<usize>>,
    out_order: Vec<usize>,
    in_parent: Vec<Option<usize>>,
    in_order: Vec<usize>,
}

impl CrudeRouter {
    pub fn new(g: &DirectedGraph, root: usize) -> Result<Self> {
        let (out_parent, out_order) = widest_arborescence(g, root, false)?;
        let (in_parent, in_order) = widest_arborescence(g, root, true)?;
        Ok(CrudeRouter {
            root,
            out_parent,
            out_order,
            in_parent,
            in_order,
        })
    }

    /// Parent edges of the outward tree.
    pub fn out_tree(&self) -> &[Option<usize>] {
        &self.out_parent
    }

    /// A flow with `B f = b`.
    pub fn route(&self, g: &DirectedGraph, b: &Demand) -> Flow {
        let mut f = vec![0.0; g.m()];
        let mut carry: Vec<f64> = b.iter().map(|&x| x.max(0.0)).collect();
        for &v in self.out_order.iter().rev() {
            if let Some(e) = self.out_parent[v] {
                f[e] += carry[v];
                carry[g.edge(e).tail] += carry[v];
            }
        }
        let mut carry: Vec<f64> = b.iter().map(|&x| (-x).max(0.0)).collect();
        for &v in self.in_order.iter().rev() {
            if let Some(e) = self.in_parent[v] {
                f[e] += carry[v];
                carry[g.edge(e).head] += carry[v];
            }
        }
        Flow(f)
    }
}
