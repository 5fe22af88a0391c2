//! Congestion approximator from the subtree cuts of an oblivious routing on
//! the symmetric copy of the graph.
//!
//! Row `(T, v)` is `b(S_v) / c(S_v)` where `S_v` is the subtree of `v` in `T`
//! and `c(S) = w(S, V\S) + w(V\S, S)`. Since `c(S)` dominates both directed
//! cut weights, every row is a lower bound on `OPT_b`. Routing `b` along the
//! trees in the symmetric copy has congestion at most `A ||R b||_inf`, where
//! `A = max_e sum_T lambda_T sum_{v : e on witness(v)} c(S_v) / w_sym(e)`, and
//! `OPT_b <= (1 + bal) OPT_sym(b)`; the quality is `(1 + bal) A`.

use super::approximator::CongestionApproximator;
use crate::balance::{imbalance_exact, undirectedize};
use crate::error::Result;
use crate::generators::seeded_rng;
use crate::graph::{cut_weight, Cut, DirectedGraph};
use crate::routing::{find_routing, RoutingOptions};

#[derive(Debug, Clone, PartialEq)]
struct TreeRows {
    /// Parents before children.
    order: Vec<usize>,
    /// Parent of every vertex; the root points to itself.
    parent: Vec<usize>,
    /// `1 / c(S_v)` for every non-root `v`.
    scale: Vec<f64>,
    /// Row index of every non-root vertex.
    row: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeApproximator {
    n: usize,
    trees: Vec<TreeRows>,
    rows: usize,
    /// `A`: congestion factor of the tree routing in the symmetric copy.
    pub symmetric_quality: f64,
    pub imbalance: f64,
    alpha: f64,
}

/// Builds the approximator from a routing rooted at vertex 0, reproducibly from `seed`.
pub fn tree_congestion_approximator(g: &DirectedGraph, seed: u64) -> Result<TreeApproximator> {
    let n = g.n();
    let sym = undirectedize(g);
    let construction = find_routing(&sym, 0, &mut seeded_rng(seed), RoutingOptions::default())?;
    let imbalance = imbalance_exact(g)?.value;
    let mut trees = Vec::new();
    let mut rows = 0;
    let mut factor = vec![0.0; sym.m()];
    for (t, lambda) in construction.routing.trees() {
        let order = t.order();
        // members[v][u]: u lies in the subtree of v.
        let mut members = vec![vec![false; n]; n];
        for u in 0..n {
            let mut a = Some(u);
            while let Some(x) = a {
                members[x][u] = true;
                a = t.parent(x);
            }
        }
        let mut parent = vec![t.root(); n];
        let mut scale = vec![0.0; n];
        let mut row = vec![usize::MAX; n];
        for v in 0..n {
            if let Some(p) = t.parent(v) {
                parent[v] = p;
                let cut = Cut::new(std::mem::take(&mut members[v]))?;
                let (out, inn) = cut_weight(g, &cut);
                let capacity = out + inn;
                scale[v] = 1.0 / capacity;
                row[v] = rows;
                rows += 1;
                for &e in &t.arc(v).expect("non-root").witness {
                    factor[e] += lambda * capacity / sym.edge(e).weight;
                }
            }
        }
        trees.push(TreeRows {
            order,
            parent,
            scale,
            row,
        });
    }
    let symmetric_quality = factor.iter().copied().fold(1.0, f64::max);
    Ok(TreeApproximator {
        n,
        trees,
        rows,
        symmetric_quality,
        imbalance,
        alpha: (1.0 + imbalance) * symmetric_quality,
    })
}

impl CongestionApproximator for TreeApproximator {
    fn n(&self) -> usize {
        self.n
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn apply(&self, b: &[f64], out: &mut [f64]) {
        let mut below = vec![0.0; self.n];
        for t in &self.trees {
            below.copy_from_slice(b);
            for &v in t.order.iter().rev() {
                if t.row[v] != usize::MAX {
                    out[t.row[v]] = below[v] * t.scale[v];
                    below[t.parent[v]] += below[v];
                }
            }
        }
    }

    fn apply_transpose(&self, p: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        let mut above = vec![0.0; self.n];
        for t in &self.trees {
            for &v in &t.order {
                above[v] = if t.row[v] == usize::MAX {
                    0.0
                } else {
                    above[t.parent[v]] + p[t.row[v]] * t.scale[v]
                };
                out[v] += above[v];
            }
        }
    }

    fn quality(&self) -> f64 {
        self.alpha
    }
}
