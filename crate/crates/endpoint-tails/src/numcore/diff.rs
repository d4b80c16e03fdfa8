//! Central finite-difference derivatives of smooth functions.

/// Fornberg weights for the `k`-th derivative at `x0` from samples at `xs`.
pub fn fornberg_weights(x0: f64, xs: &[f64], k: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; k + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(k);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for m in (1..=mn).rev() {
                    c[i][m] = c1 * (m as f64 * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for m in (1..=mn).rev() {
                c[j][m] = (c4 * c[j][m] - m as f64 * c[j][m - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[k]).collect()
}

const HALF_WIDTH: usize = 6;

fn step_for(order: usize, x: f64) -> f64 {
    // Balances truncation of the 13-point stencil against cancellation,
    // which grows like eps / h^order.
    const H: [f64; 7] = [0.0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12];
    H[order.min(6)] * x.abs().max(1.0)
}

/// Derivatives of orders `0..=max_order` of `f` at `x`, from a symmetric
/// 13-point stencil (step chosen per order).
pub fn derivatives<F: Fn(f64) -> f64>(f: F, x: f64, max_order: usize) -> Vec<f64> {
    let mut out = vec![f(x)];
    for k in 1..=max_order {
        let h = step_for(k, x);
        let offsets: Vec<f64> = (0..=2 * HALF_WIDTH)
            .map(|i| (i as f64 - HALF_WIDTH as f64) * h)
            .collect();
        let w = fornberg_weights(0.0, &offsets, k);
        let mut acc = 0.0;
        for (o, wi) in offsets.iter().zip(&w) {
            if *wi != 0.0 {
                acc += wi * f(x + o);
            }
        }
        out.push(acc);
    }
    out
}
