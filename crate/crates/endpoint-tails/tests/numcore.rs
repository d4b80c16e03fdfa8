use endpoint_tails::numcore::{
    integrate_adaptive, laplace_boundary, laplace_interior, AsymptoticEval,
};

/// |asymptotic − quadrature| in units of the first omitted term.
fn miss(e: &AsymptoticEval, g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let q = integrate_adaptive(g, a, b, 1e-13).unwrap();
    (e.value - q).abs() / e.next_term_estimate
}

#[test]
fn interior_families_within_first_omitted_term() {
    let w = 10.0;
    let e = laplace_interior(|u| u * u, |u| 1.0 + u * u, -5.0, 5.0, 0.0, w).unwrap();
    let r = miss(&e, |u| (1.0 + u * u) * (-w * u * u).exp(), -5.0, 5.0);
    assert!(r <= 1.0, "{r}");

    let w = 20.0;
    let e = laplace_interior(|u: f64| u.cosh() - 1.0, |_| 1.0, -5.0, 5.0, 0.0, w).unwrap();
    let r = miss(&e, |u: f64| (-w * (u.cosh() - 1.0)).exp(), -5.0, 5.0);
    assert!(r <= 1.0, "{r}");
}

#[test]
fn boundary_families() {
    let w = 15.0;
    let e = laplace_boundary(|u| u + u * u, |_| 1.0, 0.0, w).unwrap();
    let r = miss(&e, |u| (-w * (u + u * u)).exp(), 0.0, 10.0);
    assert!(r <= 1.0, "{r}");

    // Every correction coefficient is 1 for this family, so the remainder is
    // the omitted term times 1/(1 - 1/w) and the one-term bound is missed.
    let w = 20.0;
    let e = laplace_boundary(|u| u, |u: f64| u.exp(), 1.0, w).unwrap();
    let r = miss(&e, |u: f64| (u - w * u).exp(), 1.0, 12.0);
    assert!((r - 1.0 / (1.0 - 1.0 / w)).abs() < 1e-3, "{r}");
}

#[test]
fn error_shrinks_when_w_doubles() {
    let h = |u: f64| u * u + u.powi(4);
    let f = |u: f64| 1.0 + u;
    let rel = |w: f64, interior: bool| {
        let (e, a) = if interior {
            (laplace_interior(h, f, -3.0, 3.0, 0.0, w).unwrap(), -3.0)
        } else {
            (laplace_boundary(h, f, 0.5, w).unwrap(), 0.5)
        };
        let q = integrate_adaptive(|u| f(u) * (-w * h(u)).exp(), a, 3.0, 1e-13).unwrap();
        ((e.value - q) / q).abs()
    };
    for interior in [true, false] {
        let (e1, e2) = (rel(20.0, interior), rel(40.0, interior));
        assert!(e1 / e2 >= 3.0, "interior = {interior}: {e1:e} -> {e2:e}");
    }
}
