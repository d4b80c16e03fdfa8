//! Laplace-method evaluators for ∫ e^{-wH(u)} f(u) du.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numcore::diff::derivatives;

/// Value of a truncated asymptotic formula with the size of the first
/// omitted term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticEval {
    pub value: f64,
    pub next_term_estimate: f64,
}

/// Interior minimum at `u0`: two-term formula
/// e^{-wH} f √(2π/(wH'')) [1 + c₁/w], with the O(w^{-2}) coefficient used as
/// the error estimate.
///
/// `hd` holds H and its derivatives through order 6 at `u0`, `fd` holds f
/// and its derivatives through order 4.
pub fn laplace_interior_from_derivatives(
    hd: &[f64; 7],
    fd: &[f64; 5],
    w: f64,
) -> Result<AsymptoticEval> {
    let [h0, _, h2, h3, h4, h5, h6] = *hd;
    let [f0, f1, f2, f3, f4] = *fd;
    if !(h2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "laplace_interior: H''(u0) = {h2} is not positive"
        )));
    }
    if f0 == 0.0 {
        return Err(Error::InvalidArgument("laplace_interior: f(u0) = 0".into()));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(format!("laplace_interior: w = {w}")));
    }
    let c1 = (5.0 / 12.0 * (h3 / h2).powi(2) - h4 / (4.0 * h2) + f2 / f0 - h3 * f1 / (h2 * f0))
        / (2.0 * h2);
    let (r1, r2, r3) = (f1 / f0, f2 / f0, f3 / f0);
    let r4 = f4 / f0;
    let c2 = r4 / (8.0 * h2.powi(2))
        - 5.0 * h3 * r3 / (12.0 * h2.powi(3))
        - 5.0 * h4 * r2 / (16.0 * h2.powi(3))
        - h5 * r1 / (8.0 * h2.powi(3))
        - h6 / (48.0 * h2.powi(3))
        + 35.0 * h3 * h3 * r2 / (48.0 * h2.powi(4))
        + 35.0 * h3 * h4 * r1 / (48.0 * h2.powi(4))
        + 7.0 * h3 * h5 / (48.0 * h2.powi(4))
        + 35.0 * h4 * h4 / (384.0 * h2.powi(4))
        - 35.0 * h3.powi(3) * r1 / (48.0 * h2.powi(5))
        - 35.0 * h3 * h3 * h4 / (64.0 * h2.powi(5))
        + 385.0 * h3.powi(4) / (1152.0 * h2.powi(6));
    let lead = (-w * h0).exp() * f0 * (2.0 * PI / (w * h2)).sqrt();
    let value = lead * (1.0 + c1 / w);
    Ok(AsymptoticEval {
        value,
        next_term_estimate: (lead * c2 / (w * w)).abs(),
    })
}

/// Interior Laplace formula with derivatives taken numerically.
pub fn laplace_interior<H, F>(h: H, f: F, a: f64, b: f64, u0: f64, w: f64) -> Result<AsymptoticEval>
where
    H: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    if !(a < u0 && u0 < b) {
        return Err(Error::InvalidArgument(format!(
            "laplace_interior: u0 = {u0} not inside ({a}, {b})"
        )));
    }
    let hd = derivatives(&h, u0, 6);
    let fd = derivatives(&f, u0, 4);
    let hd: [f64; 7] = hd.try_into().expect("seven entries");
    let fd: [f64; 5] = fd.try_into().expect("five entries");
    laplace_interior_from_derivatives(&hd, &fd, w)
}

/// Minimum at the left end `a` of [a, ∞): three-term formula
/// e^{-wH(a)} f(a)/(wH'(a)) [1 + b₁/w + b₂/w²].
///
/// `hd` holds H through order 4 at `a`, `fd` holds f through order 3.
pub fn laplace_boundary_from_derivatives(
    hd: &[f64; 5],
    fd: &[f64; 4],
    w: f64,
) -> Result<AsymptoticEval> {
    let [h0, p1, p2, p3, p4] = *hd;
    let [f0, f1, f2, f3] = *fd;
    if !(p1 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "laplace_boundary: H'(a) = {p1} is not positive"
        )));
    }
    if f0 == 0.0 {
        return Err(Error::InvalidArgument("laplace_boundary: f(a) = 0".into()));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(format!("laplace_boundary: w = {w}")));
    }
    let (r1, r2, r3) = (f1 / f0, f2 / f0, f3 / f0);
    let b1 = r1 / p1 - p2 / (p1 * p1);
    let b2 =
        r2 / p1.powi(2) - 3.0 * p2 * r1 / p1.powi(3) - p3 / p1.powi(3) + 3.0 * p2 * p2 / p1.powi(4);
    let b3 =
        r3 / p1.powi(3) - 6.0 * p2 * r2 / p1.powi(4) - 4.0 * p3 * r1 / p1.powi(4) - p4 / p1.powi(4)
            + 15.0 * p2 * p2 * r1 / p1.powi(5)
            + 10.0 * p2 * p3 / p1.powi(5)
            - 15.0 * p2.powi(3) / p1.powi(6);
    let lead = (-w * h0).exp() * f0 / (w * p1);
    Ok(AsymptoticEval {
        value: lead * (1.0 + b1 / w + b2 / (w * w)),
        next_term_estimate: (lead * b3 / w.powi(3)).abs(),
    })
}

/// Boundary Laplace formula with derivatives taken numerically.
pub fn laplace_boundary<H, F>(h: H, f: F, a: f64, w: f64) -> Result<AsymptoticEval>
where
    H: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    let hd = derivatives(&h, a, 4);
    let fd = derivatives(&f, a, 3);
    let hd: [f64; 5] = hd.try_into().expect("five entries");
    let fd: [f64; 4] = fd.try_into().expect("four entries");
    laplace_boundary_from_derivatives(&hd, &fd, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_exact() {
        let r = laplace_interior(|u| u * u, |_| 1.0, -5.0, 5.0, 0.0, 7.0).unwrap();
        assert!((r.value - (PI / 7.0).sqrt()).abs() < 1e-12);
        assert!(r.next_term_estimate < 1e-12);
    }

    #[test]
    fn exponential_boundary_exact() {
        let r = laplace_boundary(|u| u, |_| 1.0, 0.0, 3.0).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_curvature() {
        assert!(laplace_interior(|u| -u * u, |_| 1.0, -1.0, 1.0, 0.0, 5.0).is_err());
        assert!(laplace_boundary(|u| -u, |_| 1.0, 0.0, 5.0).is_err());
    }

    #[test]
    fn cosh_second_order_coefficient() {
        // ∫ e^{-w(cosh u - 1)} du = 2 e^w K_0(w) ~ √(2π/w)(1 - 1/(8w) + 9/(128w²) - ...)
        let hd = [0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
        let fd = [1.0, 0.0, 0.0, 0.0, 0.0];
        let w = 20.0;
        let r = laplace_interior_from_derivatives(&hd, &fd, w).unwrap();
        let lead = (2.0 * PI / w).sqrt();
        assert!((r.value - lead * (1.0 - 1.0 / (8.0 * w))).abs() < 1e-15);
        assert!((r.next_term_estimate - lead * 9.0 / (128.0 * w * w)).abs() < 1e-15);
    }
}
