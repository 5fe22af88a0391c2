//! Imbalance of directed graphs.
//!
//! `bal(G)` is the largest ratio `w(S, V\S) / w(V\S, S)` over proper cuts. A
//! graph is `alpha`-balanced iff the demand `-d`, with `d = B w` the residual
//! degrees, can be routed with congestion `alpha - 1`; the routing plus `w`
//! is then a circulation with edge congestions in `[1, alpha]`.

use crate::error::{Error, Result};
use crate::graph::{congestion, cut_weight, Cut, Demand, DirectedGraph, Edge, Flow};
use crate::maxflow::DemandRouter;
use crate::oracles::exact_min_congestion;
use std::collections::BTreeMap;

/// Weighted residual degrees `d = B w`: weight entering minus weight leaving each vertex.
pub fn residual_degrees(g: &DirectedGraph) -> Vec<f64> {
    let mut d = vec![0.0; g.n()];
    for e in g.edges() {
        d[e.head] += e.weight;
        d[e.tail] -= e.weight;
    }
    d
}

/// `sum_v max(0, -d_v)`: total excess of outgoing over incoming weight.
/// Defined for any digraph.
pub fn additive_imbalance(g: &DirectedGraph) -> f64 {
    residual_degrees(g).iter().map(|&d| (-d).max(0.0)).sum()
}

/// `w(S, V\S) / w(V\S, S)` for one cut.
pub fn cut_ratio(g: &DirectedGraph, cut: &Cut) -> f64 {
    let (out, inc) = cut_weight(g, cut);
    out / inc
}

/// Exact imbalance with its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct Imbalance {
    pub value: f64,
    /// Circulation with `1 <= f_e / w_e <= value` on every edge.
    pub circulation: Flow,
    /// A cut attaining the value; `None` for Eulerian graphs, where every cut does.
    pub cut: Option<Cut>,
}

/// `bal(G) = 1 + OPT_{-d}` computed with the exact min-congestion oracle.
pub fn imbalance_exact(g: &DirectedGraph) -> Result<Imbalance> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let minus_d = Demand(residual_degrees(g).iter().map(|x| -x).collect());
    let r = exact_min_congestion(g, &minus_d)?;
    let circulation = Flow(g.edges().iter().zip(r.flow.iter()).map(|(e, f)| e.weight + f).collect());
    Ok(Imbalance {
        value: 1.0 + r.value,
        circulation,
        cut: r.cut,
    })
}

/// `max_S w(S, V\S) / w(V\S, S)` by enumerating all proper cuts. For `n <= 20`.
pub fn imbalance_by_enumeration(g: &DirectedGraph) -> f64 {
    let n = g.n();
    assert!(n <= 20, "cut enumeration is limited to 20 vertices");
    if n == 1 {
        return 1.0;
    }
    (1u64..(1u64 << n) - 1)
        .map(|mask| cut_ratio(g, &Cut::from_mask(n, mask).expect("proper mask")))
        .fold(1.0, f64::max)
}

/// Outcome of [`check_balance`].
#[derive(Debug, Clone, PartialEq)]
pub enum BalanceCheck {
    /// A circulation with edge congestions in `[1, max_congestion]`, `max_congestion <= alpha`.
    Balanced { circulation: Flow, max_congestion: f64 },
    /// A cut with `w(S, V\S) / w(V\S, S) = ratio > (1 - eps) alpha`.
    Unbalanced { cut: Cut, ratio: f64 },
}

impl BalanceCheck {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceCheck::Balanced { .. })
    }
}

/// Certifies either `bal(G) <= alpha` or `bal(G) > (1 - eps) alpha`.
///
/// First the graph is softened by adding every reverse edge at weight
/// `w / (4 alpha)`, which caps its imbalance at `4 alpha`; a 3/2-approximate
/// routing of its residual degrees either exposes a cut of ratio above
/// `alpha` or shows the original imbalance is `O(alpha)`. Then `-d` is routed
/// in `G` at accuracy `eps`.
pub fn check_balance(g: &DirectedGraph, alpha: f64, eps: f64, router: &dyn DemandRouter) -> Result<BalanceCheck> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be at least 1, got {alpha}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if g.n() == 1 {
        return Ok(BalanceCheck::Balanced {
            circulation: Flow::zeros(g.m()),
            max_congestion: 1.0,
        });
    }
    let mut edges = g.edges().to_vec();
    edges.extend(g.edges().iter().map(|e| Edge {
        tail: e.head,
        head: e.tail,
        weight: e.weight / (4.0 * alpha),
        length: e.length,
    }));
    let softened = DirectedGraph::new(g.n(), edges)?;
    let minus_d = Demand(residual_degrees(&softened).iter().map(|x| -x).collect());
    let coarse = router.route(&softened, &minus_d, 0.5)?;
    if coarse.congestion > 2.0 * alpha {
        if let Some(cut) = coarse.cut {
            let ratio = cut_ratio(g, &cut);
            if ratio > alpha {
                return Ok(BalanceCheck::Unbalanced { cut, ratio });
            }
        }
    }
    let minus_d = Demand(residual_degrees(g).iter().map(|x| -x).collect());
    let mut eps_i = eps.min(0.5);
    for _ in 0..6 {
        let fine = router.route(g, &minus_d, eps_i)?;
        if 1.0 + fine.congestion <= alpha {
            let circulation = Flow(
                g.edges()
                    .iter()
                    .zip(fine.flow.iter())
                    .map(|(e, f)| e.weight + f)
                    .collect(),
            );
            let max_congestion = congestion(g, &circulation);
            return Ok(BalanceCheck::Balanced {
                circulation,
                max_congestion,
            });
        }
        if let Some(cut) = fine.cut {
            let ratio = cut_ratio(g, &cut);
            if ratio > (1.0 - eps) * alpha {
                return Ok(BalanceCheck::Unbalanced { cut, ratio });
            }
        }
        eps_i /= 2.0;
    }
    Err(Error::Precondition(
        "balance check did not reach a certified answer".into(),
    ))
}

/// Symmetric copy: for every unordered pair joined by edges in either
/// direction, one edge each way whose weight is the total weight between the
/// pair and whose length is the shortest length between them. Pairs appear in
/// lexicographic order, `u -> v` before `v -> u`.
pub fn undirectedize(g: &DirectedGraph) -> DirectedGraph {
    let mut pairs: BTreeMap<(usize, usize), (f64, f64)> = BTreeMap::new();
    for e in g.edges() {
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        let entry = pairs.entry(key).or_insert((0.0, f64::INFINITY));
        entry.0 += e.weight;
        entry.1 = entry.1.min(e.length);
    }
    let mut edges = Vec::with_capacity(2 * pairs.len());
    for ((u, v), (w, l)) in pairs {
        edges.push(Edge::with_length(u, v, w, l));
        edges.push(Edge::with_length(v, u, w, l));
    }
    DirectedGraph::with_any_connectivity(g.n(), edges).expect("symmetric copy of a valid graph")
}

/// Residual graph of a flow: edge `e` contributes `tail -> head` with capacity
/// `w_e - f_e` and `head -> tail` with capacity `f_e`; capacities at most
/// `1e-12 w_e` are dropped. Lengths are inherited.
pub fn residual_graph(g: &DirectedGraph, f: &Flow) -> Result<DirectedGraph> {
    if f.len() != g.m() {
        return Err(Error::LengthMismatch {
            expected: g.m(),
            got: f.len(),
        });
    }
    let mut edges = Vec::with_capacity(2 * g.m());
    for (i, (e, &x)) in g.edges().iter().zip(f.iter()).enumerate() {
        if x < 0.0 || x > e.weight * (1.0 + 1e-9) {
            return Err(Error::InvalidFlow(i));
        }
        let tol = 1e-12 * e.weight;
        if e.weight - x > tol {
            edges.push(Edge::with_length(e.tail, e.head, e.weight - x, e.length));
        }
        if x > tol {
            edges.push(Edge::with_length(e.head, e.tail, x, e.length));
        }
    }
    DirectedGraph::with_any_connectivity(g.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_balanced, seeded_rng};
    use crate::maxflow::{ApproxRouter, ExactRouter};
    use crate::testing::random_strong_graph;
    use proptest::prelude::*;

    fn two_cycle(a: f64, b: f64) -> DirectedGraph {
        DirectedGraph::new(2, vec![Edge::new(0, 1, a), Edge::new(1, 0, b)]).unwrap()
    }

    #[test]
    fn two_cycle_imbalance() {
        let r = imbalance_exact(&two_cycle(2.0, 1.0)).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(r.circulation.0, vec![2.0, 2.0]);
        assert_eq!(additive_imbalance(&two_cycle(2.0, 1.0)), 1.0);
    }

    #[test]
    fn eulerian_graph_is_one_balanced() {
        let r = imbalance_exact(&crate::generators::directed_cycle(5)).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.cut.is_none());
    }

    #[test]
    fn undirectedize_merges_reverse_pairs() {
        let u = undirectedize(&two_cycle(1.0, 1.0));
        assert_eq!(u.m(), 2);
        assert_eq!(u.edge(0).weight, 2.0);
        assert_eq!(u.edge(1).weight, 2.0);
    }

    #[test]
    fn residual_of_saturated_edge_only_points_back() {
        let g = two_cycle(1.0, 3.0);
        let h = residual_graph(&g, &Flow(vec![1.0, 0.0])).unwrap();
        assert_eq!(h.m(), 2);
        assert!(h.edges().iter().all(|e| e.tail == 1 && e.head == 0));
    }

    #[test]
    fn additive_imbalance_allows_disconnected_graphs() {
        let g = DirectedGraph::with_any_connectivity(3, vec![Edge::new(0, 1, 2.0)]).unwrap();
        assert_eq!(additive_imbalance(&g), 2.0);
        assert_eq!(imbalance_exact(&g), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn check_balance_on_two_cycles() {
        for router in [&ExactRouter as &dyn DemandRouter, &ApproxRouter::default()] {
            let g = two_cycle(3.0, 1.0);
            assert!(check_balance(&g, 3.5, 0.1, router).unwrap().is_balanced());
            match check_balance(&g, 2.0, 0.1, router).unwrap() {
                BalanceCheck::Unbalanced { ratio, .. } => assert_eq!(ratio, 3.0),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn balanced_generator_respects_its_bound() {
        let mut rng = seeded_rng(8);
        for _ in 0..10 {
            let g = random_balanced(6, 5, 2.5, &mut rng);
            assert!(imbalance_by_enumeration(&g) <= 2.5 + 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_imbalance_matches_enumeration(seed in any::<u64>(), n in 2usize..8) {
            let (g, _) = random_strong_graph(seed, n);
            let r = imbalance_exact(&g).unwrap();
            let brute = imbalance_by_enumeration(&g);
            prop_assert!((r.value - brute).abs() <= 1e-7);
            if let Some(cut) = &r.cut {
                prop_assert!((cut_ratio(&g, cut) - r.value).abs() <= 1e-7);
            }
            for (e, f) in g.edges().iter().zip(r.circulation.iter()) {
                prop_assert!(*f >= e.weight * (1.0 - 1e-12));
                prop_assert!(*f <= e.weight * (r.value + 1e-7));
            }
            let b = crate::graph::incidence_apply(&g, &r.circulation).unwrap();
            prop_assert!(b.iter().all(|x| x.abs() <= 1e-7));
        }

        #[test]
        fn imbalance_is_symmetric_under_reversal(seed in any::<u64>(), n in 2usize..7) {
            let (g, _) = random_strong_graph(seed, n);
            let a = imbalance_exact(&g).unwrap().value;
            let b = imbalance_exact(&g.reversed()).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-7 * a);
        }
    }
}
