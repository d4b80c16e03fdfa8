use endpoint_tails::asymptotics::*;
use endpoint_tails::fredholm::{f1_fredholm, f_cumulative, f_cumulative_tail};
use endpoint_tails::numcore::{gauss_legendre, integrate_adaptive, map_finite};

#[test]
fn goe_tails_against_fredholm() {
    let f = f1_fredholm(-10.0).unwrap();
    let e = f1_tail(-10.0, TailSide::Left, 4).unwrap();
    assert!((e.value - f).abs() <= e.next_term_estimate);

    let f8 = f1_fredholm(-8.0).unwrap();
    let errs: Vec<f64> = (1..=3)
        .map(|n| (f1_tail(-8.0, TailSide::Left, n).unwrap().value - f8).abs())
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");

    let fr = f1_fredholm(8.0).unwrap();
    let e = f1_tail(8.0, TailSide::Right, 0).unwrap();
    assert!((e.value - fr).abs() <= e.next_term_estimate);
}

#[test]
fn cumulative_tail_against_quadrature() {
    let e = f_cumulative_asym(-8.0).unwrap();
    let c = f_cumulative(-8.0).unwrap();
    assert!((e.value - c).abs() <= e.next_term_estimate);
    assert!(f_cumulative_asym(-5.0).is_err());

    // F(-10) by quadrature of F₁ over [-12, -10]; the tail below -12 is
    // thirteen orders smaller.
    let u: f64 = -10.0;
    let rule = map_finite(&gauss_legendre(20).unwrap(), -12.0, u);
    let big_f: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(s, w)| w * f1_fredholm(*s).unwrap())
        .sum::<f64>()
        + f_cumulative_tail(-12.0).0;
    let ratio = f1_fredholm(u).unwrap() / big_f;
    let x = (-u).powf(-1.5);
    let s2 = std::f64::consts::SQRT_2;
    let series = u * u / 8.0
        * (1.0 + 2.0 * s2 * x + 16.5 * x * x
            - 97.0 * s2 / 4.0 * x.powi(3)
            - 4791.0 / 16.0 * x.powi(4));
    // The next coefficient of the ratio series is 119543√2/64.
    let omitted = 119543.0 * s2 / 64.0 * x.powi(5);
    assert!((ratio / series - 1.0).abs() < omitted);
}

#[test]
fn exponent_h_derivative_and_saddle() {
    let (u, w) = (-4.0, 12.0);
    let h = 1e-4;
    let fd = (h_exponent_h(u + h, w).unwrap() - h_exponent_h(u - h, w).unwrap()) / (2.0 * h);
    assert!((h_exponent_h_prime(u, w).unwrap() - fd).abs() < 1e-6);

    let w = 12.0;
    let u0 = u0_critical_refined(w).unwrap();
    let d0 = h_exponent_h_prime(u0, w).unwrap();
    let d1 = h_exponent_h_prime(u0 + 1.0, w).unwrap();
    assert!(d0.abs() <= 1e-3 * d1.abs(), "{d0} vs {d1}");
    let hh = 1e-2;
    let second = (h_exponent_h(u0 + hh, w).unwrap() - 2.0 * h_exponent_h(u0, w).unwrap()
        + h_exponent_h(u0 - hh, w).unwrap())
        / (hh * hh);
    assert!(second > 0.0);

    // The four-term series for u₀ has an O(w^{-3}) relative remainder.
    let rel = |w: f64| {
        let a = u0_critical(w).unwrap();
        ((a - u0_critical_refined(w).unwrap()) / a).abs()
    };
    assert!(rel(8.0) / rel(16.0) > 8.0);

    let scaled: Vec<f64> = [10.0, 20.0, 40.0f64]
        .iter()
        .map(|w| 24.0 / (w * w) * h_exponent_h(0.0, *w).unwrap() - 1.0)
        .collect();
    assert!(scaled[0] > scaled[1] && scaled[1] > scaled[2] && scaled[2].abs() < 1e-4);
}

#[test]
fn tail_by_quadrature_of_density_expansion() {
    for t in [2.0, 3.0, 4.0] {
        let tail = tail_asym(t).unwrap();
        let q =
            integrate_adaptive(|s| 2.0 * phat_asym(s).unwrap().value, t, t + 6.0, 1e-13).unwrap();
        assert!((q - tail.value).abs() <= tail.next_order, "t={t}");
    }
}
