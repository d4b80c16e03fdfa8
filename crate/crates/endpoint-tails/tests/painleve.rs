use endpoint_tails::asymptotics::{f1_tail, TailSide};
use endpoint_tails::fredholm::f1_fredholm;
use endpoint_tails::numcore::{
    airy_ai, airy_ai_prime, gauss_legendre, integrate_adaptive, map_semi_infinite,
};
use endpoint_tails::painleve::*;

#[test]
fn right_boundary_condition() {
    // q - Ai is the first Neumann correction ∫∫Ai(s+ξ)Ai(s+ξ+η)Ai(s+η),
    // 5e-10 relative at s = 5.
    let s = 5.0;
    let r = map_semi_infinite(&gauss_legendre(80).unwrap(), 0.0, 2.0).unwrap();
    let mut c = 0.0;
    for (x, wx) in r.nodes.iter().zip(&r.weights) {
        for (y, wy) in r.nodes.iter().zip(&r.weights) {
            c += wx * wy * airy_ai(s + x) * airy_ai(s + x + y) * airy_ai(s + y);
        }
    }
    let q = q_hm(s).unwrap();
    assert!(((q - airy_ai(s)) / c - 1.0).abs() < 1e-5);
    assert!((q_prime(s).unwrap() - airy_ai_prime(s)).abs() <= 1e-7);

    let v = v_of_s(s).unwrap();
    assert!((v - (s + 2.0 * airy_ai(s).powi(2) - 2.0 * airy_ai_prime(s))).abs() <= 1e-7);
}

/// All corrections share sign on the left, so the truncation error is at
/// least the first omitted term and at most it plus twice the one after.
fn bracket(exact: f64, series: impl Fn(usize) -> f64, est: impl Fn(usize) -> f64, n: usize) {
    let diff = exact - series(n);
    let omitted = series(n + 1) - series(n);
    assert!(diff * omitted > 0.0, "n = {n}");
    assert!(diff.abs() >= est(n), "n = {n}");
    assert!(diff.abs() <= est(n) + 2.0 * est(n + 1), "n = {n}: {diff:e}");
}

#[test]
fn left_series_at_minus_eight() {
    let s = -8.0;
    let q = q_hm(s).unwrap();
    let qp = q_prime(s).unwrap();
    for n in 1..=2 {
        bracket(
            q,
            |k| q_asym(s, k).unwrap().value,
            |k| q_asym(s, k).unwrap().next_term_estimate,
            n,
        );
        bracket(
            qp,
            |k| qp_asym(s, k).unwrap().value,
            |k| qp_asym(s, k).unwrap().next_term_estimate,
            n,
        );
    }
    let v = v_of_s(s).unwrap();
    let e = v_asym(s, 4).unwrap();
    assert!((v - e.value).abs() <= e.next_term_estimate);
    assert!((v - 0.246365).abs() < 1e-5);
}

#[test]
fn relative_match_at_minus_ten() {
    let q = q_hm(-10.0).unwrap();
    let e = q_asym(-10.0, 3).unwrap();
    assert!((q - e.value).abs() / q <= e.next_term_estimate);
}

#[test]
fn value_at_origin_by_backward_integration() {
    // RK4 for q'' = sq + 2q³ from s = 8 down to 0, seeded with Ai. The
    // growing solution going left is the Ai direction, so this is stable.
    let rhs = |s: f64, q: f64| s * q + 2.0 * q.powi(3);
    let (mut s, mut q, mut p) = (8.0, airy_ai(8.0), airy_ai_prime(8.0));
    let h = -1e-3;
    for _ in 0..8000 {
        let (k1q, k1p) = (p, rhs(s, q));
        let (k2q, k2p) = (p + 0.5 * h * k1p, rhs(s + 0.5 * h, q + 0.5 * h * k1q));
        let (k3q, k3p) = (p + 0.5 * h * k2p, rhs(s + 0.5 * h, q + 0.5 * h * k2q));
        let (k4q, k4p) = (p + h * k3p, rhs(s + h, q + h * k3q));
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        s += h;
    }
    assert!((q - q_hm(0.0).unwrap()).abs() < 1e-9, "{q}");
    assert!((p - q_prime(0.0).unwrap()).abs() < 1e-7, "{p}");
}

#[test]
fn ode_residual_and_positivity() {
    let h = 1e-2;
    let mut s = -10.0;
    while s <= 6.0 {
        let f: Vec<f64> = (-2..=2).map(|k| q_hm(s + k as f64 * h).unwrap()).collect();
        let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
        let r = d2 - s * f[2] - 2.0 * f[2].powi(3);
        assert!(r.abs() <= 1e-6, "s = {s}: {r:e}");
        s += 0.5;
    }
    for k in 0..=80 {
        let s = -12.0 + 0.25 * k as f64;
        assert!(q_hm(s).unwrap() > 0.0, "s = {s}");
        if (-11.5..=0.0).contains(&s) {
            assert!(v_of_s(s).unwrap() > 0.0, "s = {s}");
        }
    }
}

#[test]
fn integrals_of_q() {
    let i8 = int_q(8.0).unwrap();
    let ai = integrate_adaptive(airy_ai, 8.0, 30.0, 1e-13).unwrap();
    assert!(i8 > 0.0 && i8 <= 1e-7);
    assert!((i8 - ai).abs() <= 1e-12);

    let t: f64 = 8.0;
    let sq2 = 2f64.sqrt();
    let closed = sq2 / 3.0 * t.powf(1.5) + 0.5 * 2f64.ln() + sq2 / 24.0 * t.powf(-1.5);
    assert!((int_q(-t).unwrap() - closed).abs() <= t.powf(-4.5));

    let h = 1e-3;
    let d = (int_q(-3.0 + h).unwrap() - int_q(-3.0 - h).unwrap()) / (2.0 * h);
    assert!((d + q_hm(-3.0).unwrap()).abs() <= 1e-6);
}

#[test]
fn painleve_form_of_f1() {
    assert!((f1_painleve(10.0).unwrap() - 1.0).abs() <= 1e-10);
    let e = f1_tail(-10.0, TailSide::Left, 4).unwrap();
    assert!((f1_painleve(-10.0).unwrap() - e.value).abs() <= e.next_term_estimate);
    for k in 0..=7 {
        let s = -10.0 + 2.0 * k as f64;
        let d = f1_painleve(s).unwrap() - f1_fredholm(s).unwrap();
        assert!(d.abs() <= 1e-8, "s = {s}: {d:e}");
    }
}
