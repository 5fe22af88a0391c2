//! Congestion approximators: linear maps `R` with
//! `||R b||_inf <= OPT_b <= alpha ||R b||_inf` for every demand `b`.

/// A linear congestion approximator with quality `alpha`.
pub trait CongestionApproximator {
    /// Number of vertices (columns of `R`).
    fn n(&self) -> usize;
    /// Number of rows of `R`.
    fn rows(&self) -> usize;
    /// `out = R b`.
    fn apply(&self, b: &[f64], out: &mut [f64]);
    /// `out = R^T p`.
    fn apply_transpose(&self, p: &[f64], out: &mut [f64]);
    /// The quality `alpha >= 1`.
    fn quality(&self) -> f64;

    /// `||R b||_inf`.
    fn norm(&self, b: &[f64]) -> f64 {
        let mut out = vec![0.0; self.rows()];
        self.apply(b, &mut out);
        out.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// An explicit dense `R`, mostly for tests and small experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseApproximator {
    pub matrix: Vec<Vec<f64>>,
    pub n: usize,
    pub alpha: f64,
}

impl CongestionApproximator for DenseApproximator {
    fn n(&self) -> usize {
        self.n
    }

    fn rows(&self) -> usize {
        self.matrix.len()
    }

    fn apply(&self, b: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.matrix) {
            *o = row.iter().zip(b).map(|(r, x)| r * x).sum();
        }
    }

    fn apply_transpose(&self, p: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        for (row, &pi) in self.matrix.iter().zip(p) {
            for (o, r) in out.iter_mut().zip(row) {
                *o += r * pi;
            }
        }
    }

    fn quality(&self) -> f64 {
        self.alpha
    }
}
