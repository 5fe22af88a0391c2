//! Directed sparsest cut on unit-weight simple graphs with an even number of
//! vertices, where `sparsity(S) = w(S, V\S) / (|S| |V\S|)`.
//!
//! A graph that is far from balanced has a lopsided cut whose light direction
//! is sparse. Otherwise a cut-matching game asks the router to send `n phi / 4`
//! units from every vertex of a bisection to the other half. A certified
//! lower bound of at least `1/2` on the congestion exposes a threshold cut of
//! sparsity at most `phi`; a routed query becomes a fractional matching that
//! mixes a random walk, from which the next bisection is read off.

use crate::balance::{check_balance, BalanceCheck};
use crate::error::{Error, Result};
use crate::generators::seeded_rng;
use crate::graph::{cut_weight, Cut, Demand, DirectedGraph};
use crate::maxflow::DemandRouter;
use rand::Rng;
use std::collections::HashSet;

/// `w(S, V\S) / (|S| |V\S|)`.
pub fn sparsity(g: &DirectedGraph, s: &Cut) -> Result<f64> {
    validate_unit_simple(g)?;
    if s.n() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: s.n(),
        });
    }
    let (out, _) = cut_weight(g, s);
    Ok(out / (s.len() * (g.n() - s.len())) as f64)
}

/// Sparsest cut by enumerating all `2^n - 2` proper cuts.
pub fn min_sparsity_by_enumeration(g: &DirectedGraph) -> Result<(Cut, f64)> {
    validate_unit_simple(g)?;
    let n = g.n();
    if !(2..=24).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "enumeration needs 2..=24 vertices, got {n}"
        )));
    }
    let mut best: Option<(Cut, f64)> = None;
    for mask in 1u64..(1 << n) - 1 {
        let cut = Cut::from_mask(n, mask)?;
        let s = sparsity(g, &cut)?;
        if best.as_ref().is_none_or(|(_, b)| s < *b) {
            best = Some((cut, s));
        }
    }
    Ok(best.expect("n >= 2 has a proper cut"))
}

fn validate_unit_simple(g: &DirectedGraph) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.weight != 1.0 {
            return Err(Error::Precondition(format!("edge {i} does not have unit weight")));
        }
        if !seen.insert((e.tail, e.head)) {
            return Err(Error::Precondition(format!("edge {i} is parallel to an earlier edge")));
        }
    }
    Ok(())
}

/// Where a returned cut came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutOrigin {
    /// Light side of a cut violating balance.
    Imbalance,
    /// Threshold cut of the flow query in this round (0-based).
    Matching { round: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SparsityResult {
    /// A cut with `sparsity <= phi`.
    Cut { cut: Cut, sparsity: f64, origin: CutOrigin },
    /// Every bisection query of the game routed.
    Certificate { rounds: usize, max_congestion: f64 },
}

/// Chooses the bisection queried next from the matchings answered so far.
pub trait CutPlayer {
    /// Vertex set of size `n/2` that sends flow.
    fn bisection(&mut self, rng: &mut dyn rand::RngCore) -> Vec<bool>;
    /// `matching[u][v]`: fraction of `u`'s unit matched to `v`; symmetric,
    /// rows summing to at most 1.
    fn observe(&mut self, matching: &[Vec<f64>]);
}

/// Random projection of a lazy random walk over the matchings: the next
/// bisection is the lower half of `W r` for a random sign vector `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkProjectionPlayer {
    walk: Vec<Vec<f64>>,
}

impl WalkProjectionPlayer {
    pub fn new(n: usize) -> Self {
        let walk = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        WalkProjectionPlayer { walk }
    }
}

impl CutPlayer for WalkProjectionPlayer {
    fn bisection(&mut self, rng: &mut dyn rand::RngCore) -> Vec<bool> {
        let n = self.walk.len();
        let r: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
        let mean = r.iter().sum::<f64>() / n as f64;
        let y: Vec<f64> = self
            .walk
            .iter()
            .map(|row| row.iter().zip(&r).map(|(w, x)| w * (x - mean)).sum())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));
        let mut side = vec![false; n];
        order[..n / 2].iter().for_each(|&v| side[v] = true);
        side
    }

    fn observe(&mut self, matching: &[Vec<f64>]) {
        let n = self.walk.len();
        let mut next = vec![vec![0.0; n]; n];
        for u in 0..n {
            let stay = 1.0 - matching[u].iter().sum::<f64>();
            for k in 0..n {
                let mut x = (1.0 + stay) * self.walk[u][k];
                for v in 0..n {
                    if matching[u][v] > 0.0 {
                        x += matching[u][v] * self.walk[v][k];
                    }
                }
                next[u][k] = 0.5 * x;
            }
        }
        self.walk = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsestCutOptions {
    /// Accuracy handed to the balance check.
    pub eps: f64,
    /// Game rounds; `None` for `10 ceil(ln^2 n)`.
    pub rounds: Option<usize>,
    pub seed: u64,
}

impl Default for SparsestCutOptions {
    fn default() -> Self {
        SparsestCutOptions {
            eps: 0.1,
            rounds: None,
            seed: 0,
        }
    }
}

/// `10 ceil(ln^2 n)`.
pub fn default_rounds(n: usize) -> usize {
    10 * (n.max(2) as f64).ln().powi(2).ceil() as usize
}

/// Either a cut of sparsity at most `phi` or evidence that every queried
/// bisection routes, with the default walk-projection cut player.
pub fn sparsest_cut(
    g: &DirectedGraph,
    phi: f64,
    router: &dyn DemandRouter,
    options: SparsestCutOptions,
) -> Result<SparsityResult> {
    sparsest_cut_with_player(g, phi, router, &mut WalkProjectionPlayer::new(g.n()), options)
}

pub fn sparsest_cut_with_player(
    g: &DirectedGraph,
    phi: f64,
    router: &dyn DemandRouter,
    player: &mut dyn CutPlayer,
    options: SparsestCutOptions,
) -> Result<SparsityResult> {
    let n = g.n();
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::InvalidParameter(format!("phi must lie in (0, 1], got {phi}")));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("need an even number of vertices, got {n}")));
    }
    if !(options.eps > 0.0 && options.eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1), got {}",
            options.eps
        )));
    }
    validate_unit_simple(g)?;
    // A reported cut has ratio above (1 - eps) alpha = 1 / phi, so its light
    // side carries less than phi times the heavy direction's weight.
    let alpha = 1.0 / ((1.0 - options.eps) * phi);
    if let BalanceCheck::Unbalanced { cut, .. } = check_balance(g, alpha, options.eps, router)? {
        let light = cut.complement();
        return Ok(cut_result(g, light, phi, CutOrigin::Imbalance));
    }
    let amount = n as f64 * phi / 4.0;
    let rounds = options.rounds.unwrap_or_else(|| default_rounds(n));
    let mut rng = seeded_rng(options.seed);
    let mut max_congestion = 0.0f64;
    for round in 0..rounds {
        let side = player.bisection(&mut rng);
        debug_assert_eq!(side.iter().filter(|&&x| x).count(), n / 2);
        let b = Demand(side.iter().map(|&s| if s { -amount } else { amount }).collect());
        let answer = router.route(g, &b, 0.5)?;
        if answer.lower_bound >= 0.5 {
            if let Some(t) = answer.cut {
                // w(V\T, T) <= 2 b_T <= (n phi / 2) min(|T|, |V\T|) <= phi |T| |V\T|.
                return Ok(cut_result(g, t.complement(), phi, CutOrigin::Matching { round }));
            }
        }
        max_congestion = max_congestion.max(answer.congestion);
        let scale = 1.0 / (amount * answer.congestion.max(1.0));
        player.observe(&fractional_matching(g, &answer.flow, &b, scale));
    }
    Ok(SparsityResult::Certificate { rounds, max_congestion })
}

fn cut_result(g: &DirectedGraph, cut: Cut, phi: f64, origin: CutOrigin) -> SparsityResult {
    let (out, _) = cut_weight(g, &cut);
    let s = out / (cut.len() * (g.n() - cut.len())) as f64;
    assert!(s <= phi * (1.0 + 1e-9), "returned cut has sparsity {s} > {phi}");
    SparsityResult::Cut {
        cut,
        sparsity: s,
        origin,
    }
}

/// Decomposes `flow` routing `b` into source-to-sink paths and returns the
/// symmetric matrix of path amounts times `scale`. Flow cycles met on the way
/// are cancelled.
pub fn fractional_matching(g: &DirectedGraph, flow: &[f64], b: &Demand, scale: f64) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut f = flow.to_vec();
    let total = b.positive_mass();
    let tol = 1e-9 * total.max(1.0);
    let mut supply: Vec<f64> = b.iter().map(|&x| (-x).max(0.0)).collect();
    let mut demand: Vec<f64> = b.iter().map(|&x| x.max(0.0)).collect();
    let mut cursor = vec![0usize; n];
    let mut matching = vec![vec![0.0; n]; n];
    for u in 0..n {
        while supply[u] > tol {
            let mut path: Vec<usize> = Vec::new();
            let mut on_path = vec![usize::MAX; n];
            on_path[u] = 0;
            let mut v = u;
            let done = loop {
                if v != u && demand[v] > tol {
                    break true;
                }
                let out = g.out_edges(v);
                while cursor[v] < out.len() && f[out[cursor[v]]] <= tol {
                    cursor[v] += 1;
                }
                if cursor[v] == out.len() {
                    break false;
                }
                let e = out[cursor[v]];
                let w = g.edge(e).head;
                if on_path[w] != usize::MAX {
                    let cycle = &path[on_path[w]..];
                    let least = cycle
                        .iter()
                        .chain(std::iter::once(&e))
                        .map(|&c| f[c])
                        .fold(f64::INFINITY, f64::min);
                    for &c in cycle.iter().chain(std::iter::once(&e)) {
                        f[c] -= least;
                    }
                    for &c in &path[on_path[w]..] {
                        on_path[g.edge(c).head] = usize::MAX;
                    }
                    path.truncate(on_path[w]);
                    v = w;
                    continue;
                }
                path.push(e);
                on_path[w] = path.len();
                v = w;
            };
            if !done {
                break;
            }
            let amount = path.iter().map(|&e| f[e]).fold(supply[u].min(demand[v]), f64::min);
            for &e in &path {
                f[e] -= amount;
            }
            supply[u] -= amount;
            demand[v] -= amount;
            matching[u][v] += amount * scale;
            matching[v][u] += amount * scale;
        }
    }
    matching
}
