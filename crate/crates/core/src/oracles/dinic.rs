//! Blocking-flow maximum flow on real capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: f64,
}

/// A residual network. Arc `2k` is the `k`-th added arc and `2k+1` its reverse.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    original_cap: Vec<f64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
    eps: f64,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            arcs: Vec::new(),
            original_cap: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
            eps: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds arc `u -> v` and returns its id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: f64) -> usize {
        let id = self.original_cap.len();
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: 0.0 });
        self.original_cap.push(cap);
        id
    }

    /// Current flow on arc `id`.
    pub fn flow(&self, id: usize) -> f64 {
        (self.original_cap[id] - self.arcs[2 * id].cap).max(0.0)
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > self.eps && self.level[to] == usize::MAX {
                    self.level[to] = self.level[u] + 1;
                    q.push_back(to);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: f64) -> f64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > self.eps && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0.0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0.0
    }

    /// Augments from `s` to `t` until no augmenting path remains; returns the
    /// amount added by this call. Can be called again after adding arcs.
    pub fn augment(&mut self, s: usize, t: usize) -> f64 {
        let max_cap = self
            .original_cap
            .iter()
            .copied()
            .filter(|c| c.is_finite())
            .fold(0.0, f64::max);
        self.eps = 1e-13 * max_cap.max(1e-300);
        let mut total = 0.0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, f64::INFINITY);
                if f <= 0.0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > self.eps && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}
