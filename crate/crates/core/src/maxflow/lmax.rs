//! Symmetric soft-max `lmax(x) = ln sum_i (e^{x_i} + e^{-x_i})`.

/// Value of `lmax(x)` and its gradient, computed with the largest magnitude factored out.
pub fn lmax_with_gradient(x: &[f64], grad: &mut [f64]) -> f64 {
    let m = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut sum = 0.0;
    for (g, &v) in grad.iter_mut().zip(x) {
        let (a, b) = ((v - m).exp(), (-v - m).exp());
        sum += a + b;
        *g = a - b;
    }
    grad.iter_mut().for_each(|g| *g /= sum);
    m + sum.ln()
}

pub fn lmax(x: &[f64]) -> f64 {
    let m = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let sum: f64 = x.iter().map(|&v| (v - m).exp() + (-v - m).exp()).sum();
    m + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn no_overflow_for_large_entries() {
        let v = lmax(&[1000.0, -2000.0]);
        assert!((v - 2000.0).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn sandwiched_by_sup_norm(x in proptest::collection::vec(-50.0f64..50.0, 1..20)) {
            let norm = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let v = lmax(&x);
            prop_assert!(v >= norm - 1e-12);
            prop_assert!(v <= norm + (2.0 * x.len() as f64).ln() + 1e-12);
        }

        #[test]
        fn gradient_matches_finite_differences(x in proptest::collection::vec(-5.0f64..5.0, 1..8)) {
            let mut g = vec![0.0; x.len()];
            lmax_with_gradient(&x, &mut g);
            prop_assert!(g.iter().map(|v| v.abs()).sum::<f64>() <= 1.0 + 1e-12);
            for i in 0..x.len() {
                let h = 1e-6;
                let (mut a, mut b) = (x.clone(), x.clone());
                a[i] += h;
                b[i] -= h;
                let fd = (lmax(&a) - lmax(&b)) / (2.0 * h);
                prop_assert!((fd - g[i]).abs() < 1e-6);
            }
        }
    }
}
