//! Dense two-phase primal simplex for small linear programs:
//! minimize `c^T x` subject to `A_eq x = b_eq`, `A_ub x <= b_ub`, `x >= 0`.

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearProgram {
    pub c: Vec<f64>,
    pub a_eq: Vec<Vec<f64>>,
    pub b_eq: Vec<f64>,
    pub a_ub: Vec<Vec<f64>>,
    pub b_ub: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

const TOL: f64 = 1e-10;

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|x| *x /= p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row (`width + 1` entries, last is minus the objective value).
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut z: Vec<f64> = cost.to_vec();
        z.push(0.0);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (zj, a) in z.iter_mut().zip(row) {
                    *zj -= cb * a;
                }
            }
        }
        z
    }

    /// Runs simplex iterations on `cost` over the columns allowed by `allowed`.
    /// Returns false if unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> bool {
        let bland_after = 50 * (self.rows.len() + self.width);
        let mut z = self.reduced_costs(cost);
        for iter in 0.. {
            let entering = if iter < bland_after {
                (0..self.width)
                    .filter(|&j| allowed(j) && z[j] < -TOL)
                    .min_by(|&a, &b| z[a].total_cmp(&z[b]))
            } else {
                (0..self.width).find(|&j| allowed(j) && z[j] < -TOL)
            };
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > TOL {
                    let ratio = row[self.width] / row[c];
                    let better = match best {
                        None => true,
                        Some((bi, br)) => ratio < br - TOL || (ratio <= br + TOL && self.basis[i] < self.basis[bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
            let f = z[c];
            for (zj, a) in z.iter_mut().zip(&self.rows[r]) {
                *zj -= f * a;
            }
        }
        unreachable!()
    }
}

pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    let nv = lp.c.len();
    let n_ub = lp.a_ub.len();
    let n_rows = lp.a_eq.len() + n_ub;
    // Columns: variables, one slack per inequality, one artificial per row.
    let width = nv + n_ub + n_rows;
    let mut rows = Vec::with_capacity(n_rows);
    let mut basis = Vec::with_capacity(n_rows);
    let constraints = lp
        .a_ub
        .iter()
        .zip(&lp.b_ub)
        .enumerate()
        .map(|(i, (a, &b))| (a, b, Some(i)))
        .chain(lp.a_eq.iter().zip(&lp.b_eq).map(|(a, &b)| (a, b, None)));
    for (r, (a, b, slack)) in constraints.enumerate() {
        let mut row = vec![0.0; width + 1];
        row[..nv].copy_from_slice(a);
        if let Some(i) = slack {
            row[nv + i] = 1.0;
        }
        row[width] = b;
        if b < 0.0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        row[nv + n_ub + r] = 1.0;
        match slack {
            Some(i) if b >= 0.0 => basis.push(nv + i),
            _ => basis.push(nv + n_ub + r),
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };
    let is_artificial = |j: usize| j >= nv + n_ub;

    let phase1: Vec<f64> = (0..width).map(|j| if is_artificial(j) { 1.0 } else { 0.0 }).collect();
    t.optimize(&phase1, &|_| true);
    let infeasibility: f64 = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &b)| is_artificial(b))
        .map(|(row, _)| row[width])
        .sum();
    let scale = 1.0 + lp.b_eq.iter().chain(&lp.b_ub).fold(0.0f64, |m, x| m.max(x.abs()));
    if infeasibility > 1e-8 * scale {
        return LpOutcome::Infeasible;
    }
    for r in 0..t.rows.len() {
        if is_artificial(t.basis[r]) {
            if let Some(c) = (0..nv + n_ub).find(|&j| t.rows[r][j].abs() > 1e-9) {
                t.pivot(r, c);
            }
        }
    }

    let mut cost = vec![0.0; width];
    cost[..nv].copy_from_slice(&lp.c);
    if !t.optimize(&cost, &|j| !is_artificial(j)) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; nv];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < nv {
            x[b] = row[width].max(0.0);
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}
