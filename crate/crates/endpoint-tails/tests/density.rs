use endpoint_tails::asymptotics::{p_asym_total, tail_asym};
use endpoint_tails::density::*;
use endpoint_tails::fredholm::f1_fredholm;
use endpoint_tails::numcore::{gauss_legendre, map_finite, QuadRule};

const TWO_23: f64 = 1.587_401_051_968_199_5;
const TWO_43: f64 = 2.519_842_099_789_746_3;

fn rule(n: usize, a: f64, b: f64) -> QuadRule<f64> {
    map_finite(&gauss_legendre(n).unwrap(), a, b)
}

/// ∫_{-10}^{10} g(w) dw for an even g.
fn even_integral(mut g: impl FnMut(f64) -> f64) -> f64 {
    let r = rule(40, 0.0, MAX_W);
    2.0 * r
        .nodes
        .iter()
        .zip(&r.weights)
        .map(|(w, c)| c * g(*w))
        .sum::<f64>()
}

#[test]
fn normalizations() {
    let total = even_integral(|w| p_marginal(w).unwrap());
    assert!((total - 1.0).abs() < 1e-3, "{total}");

    let t_max = MAX_W / TWO_43;
    let r = rule(40, 0.0, t_max);
    let hat: f64 = 2.0
        * r.nodes
            .iter()
            .zip(&r.weights)
            .map(|(t, c)| c * phat_marginal(*t).unwrap())
            .sum::<f64>();
    assert!((hat - 1.0).abs() < 1e-3, "{hat}");

    let rs = rule(32, MIN_S, 8.0);
    let rw = rule(24, 0.0, MAX_W);
    let mut joint = 0.0;
    for (s, cs) in rs.nodes.iter().zip(&rs.weights) {
        for (w, cw) in rw.nodes.iter().zip(&rw.weights) {
            joint += 2.0 * cs * cw * p_joint_schehr(*s, *w).unwrap();
        }
    }
    assert!((joint - 1.0).abs() < 1e-3, "{joint}");
}

#[test]
fn marginal_matches_s_integral_of_joint() {
    let w = 2.0;
    let r = rule(64, MIN_S, 16.0);
    let direct: f64 = r
        .nodes
        .iter()
        .zip(&r.weights)
        .map(|(s, c)| c * p_joint_schehr(*s, w).unwrap())
        .sum();
    let fubini = p_marginal(w).unwrap();
    assert!((direct - fubini).abs() < 1e-9 * fubini, "{direct} {fubini}");
}

#[test]
fn maximum_marginal_is_goe() {
    for m in [-1.0, 0.0, 1.0] {
        let s = TWO_23 * m;
        let h = 1e-3;
        let d = (f1_fredholm(s - 2.0 * h).unwrap() - 8.0 * f1_fredholm(s - h).unwrap()
            + 8.0 * f1_fredholm(s + h).unwrap()
            - f1_fredholm(s + 2.0 * h).unwrap())
            / (12.0 * h);
        let t_max = MAX_W / TWO_43;
        let r = rule(40, 0.0, t_max);
        let marginal: f64 = 2.0
            * r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(t, c)| c * phat_joint(m, *t).unwrap())
                .sum::<f64>();
        assert!((marginal - TWO_23 * d).abs() < 1e-4, "m={m}");
    }
}

#[test]
fn schehr_and_mfqr_agree() {
    let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
    for m in grid {
        for t in grid {
            let a = phat_joint(m, t).unwrap();
            let b = phat_joint_mfqr(m, t).unwrap();
            assert!((a - b).abs() <= 1e-6, "({m}, {t}): {a} vs {b}");
        }
    }
    let a = phat_joint_mfqr(0.0, 0.5).unwrap();
    assert!((a - phat_joint(0.0, 0.5).unwrap()).abs() < 1e-6);
}

#[test]
fn evenness() {
    let a = phat_marginal(1.5).unwrap();
    assert!((a - phat_marginal(-1.5).unwrap()).abs() < 1e-9);
    for (m, t) in [(-0.5, 0.8), (0.3, 1.7)] {
        let a = phat_joint(m, t).unwrap();
        assert!((a - phat_joint(m, -t).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn large_w_against_asymptotics() {
    let p = p_marginal(6.0).unwrap();
    let a = p_asym_total(6.0).unwrap().value;
    assert!(p > 0.0 && (p / a - 1.0).abs() < 0.25, "{}", p / a);
}

#[test]
fn tail_probability() {
    assert!((tail_prob(0.0).unwrap() - 1.0).abs() < 1e-3);
    let t1 = tail_prob(1.0).unwrap();
    let t15 = tail_prob(1.5).unwrap();
    let t2 = tail_prob(2.0).unwrap();
    assert!(t1 > t15 && t15 > t2);
    let ratio = t2 / tail_asym(2.0).unwrap().value;
    assert!((0.7..=1.3).contains(&ratio), "{ratio}");
    assert!(tail_prob(3.0).is_err());
}
