//! Acceptance criteria. Each criterion prints one PASS or FAIL line with the
//! measured numbers. A FAIL is reported, not asserted. Lines go straight to
//! stderr so they show without --nocapture.

use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use endpoint_tails::asymptotics::{f1_tail, p_asym_total, phat_asym, tail_asym, TailSide};
use endpoint_tails::density::{
    phat_joint, phat_joint_mfqr, phat_marginal, psi_mfqr, tail_prob, MAX_W,
};
use endpoint_tails::dotsenko::{phi_dot, w_dist, w_main_density};
use endpoint_tails::fredholm::{f1_fredholm, k_zero};
use endpoint_tails::hfun::{h_direct, h_expansion, h_resolvent};
use endpoint_tails::numcore::{
    airy_ai, constants, gauss_legendre, integrate_adaptive, laplace_boundary, laplace_interior,
    map_finite, AsymptoticEval,
};
use endpoint_tails::painleve::{f1_painleve, int_q, q_asym, q_hm, v_of_s};
use endpoint_tails::Result;

const TWO_13: f64 = 1.259_921_049_894_873_2;

struct Verdict {
    pass: bool,
    detail: String,
}

/// Collects sub-checks of one criterion; the criterion passes when all do.
#[derive(Default)]
struct Checks {
    parts: Vec<(bool, String)>,
}

impl Checks {
    fn le(&mut self, what: &str, value: f64, bound: f64) {
        self.parts
            .push((value <= bound, format!("{what} {value:.3e} <= {bound:.3e}")));
    }

    fn holds(&mut self, what: &str, ok: bool, note: String) {
        self.parts.push((ok, format!("{what} {note}")));
    }

    fn note(&mut self, text: String) {
        self.parts.push((true, format!("[{text}]")));
    }

    fn verdict(self) -> Verdict {
        let pass = self.parts.iter().all(|p| p.0);
        let detail = self
            .parts
            .into_iter()
            .map(|(ok, s)| if ok { s } else { format!("MISS {s}") })
            .collect::<Vec<_>>()
            .join("; ");
        Verdict { pass, detail }
    }
}

fn max_abs(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in it {
        m = m.max(v?.abs());
    }
    Ok(m)
}

fn f1_routes() -> Result<Verdict> {
    let r = max_abs((-10..=4).map(|k| {
        let s = k as f64;
        Ok(f1_fredholm(s)? - f1_painleve(s)?)
    }))?;
    let mut c = Checks::default();
    c.le("max |fredholm - painleve|", r, 1e-8);
    Ok(c.verdict())
}

fn goe_tails() -> Result<Verdict> {
    let mut c = Checks::default();
    let left = f1_tail(-10.0, TailSide::Left, 4)?;
    c.le(
        "left s=-10",
        (left.value - f1_fredholm(-10.0)?).abs(),
        left.next_term_estimate,
    );
    let s: f64 = 8.0;
    let right = f1_tail(s, TailSide::Right, 0)?;
    let f = f1_fredholm(s)?;
    c.le(
        "right s=8",
        (right.value - f).abs(),
        right.next_term_estimate,
    );
    let printed = 1.0 - (-2.0 / 3.0 * s.powf(1.5)).exp() / (4.0 * PI.sqrt() * s.powf(1.5));
    c.note(format!(
        "printed s^(-3/2) form misses by {:.3e}",
        (printed - f).abs()
    ));
    Ok(c.verdict())
}

fn hastings_mcleod() -> Result<Verdict> {
    let mut c = Checks::default();
    let a = airy_ai(5.0);
    c.le("|q(5) - Ai(5)|/Ai(5)", (q_hm(5.0)? - a).abs() / a, 1e-6);
    let e = q_asym(-10.0, 3)?;
    c.le(
        "|q(-10) - series|",
        (q_hm(-10.0)? - e.value).abs(),
        e.next_term_estimate,
    );
    let h = 1e-2;
    let r = max_abs((0..=32).map(|k| {
        let s = -10.0 + 0.5 * k as f64;
        let f: Vec<f64> = (-2..=2)
            .map(|j| q_hm(s + j as f64 * h))
            .collect::<Result<_>>()?;
        let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
        Ok(d2 - s * f[2] - 2.0 * f[2].powi(3))
    }))?;
    c.le("ODE residual on [-10, 6]", r, 1e-6);
    Ok(c.verdict())
}

fn k_at_zero() -> Result<Verdict> {
    let mut c = Checks::default();
    let s: f64 = -10.0;
    let t = -s;
    let lead = s * s / 4.0;
    let series = lead
        * (1.0 + 2.0 * SQRT_2 * t.powf(-1.5)
            - 1.0 / (2.0 * s.powi(3))
            - SQRT_2 / 4.0 * t.powf(-4.5));
    c.le(
        "|K(0,-10) - expansion|",
        (k_zero(s)? - series).abs(),
        lead * t.powi(-6),
    );
    let s = -6.0;
    let tail = integrate_adaptive(|x| q_hm(x).map_or(f64::NAN, |q| q * q), s, 16.0, 1e-12)?;
    c.le(
        "|K(0,-6) - q - int q^2|",
        (k_zero(s)? - q_hm(s)? - tail).abs(),
        1e-7,
    );
    Ok(c.verdict())
}

fn h_routes() -> Result<Verdict> {
    let mut c = Checks::default();
    let mut worst: f64 = 0.0;
    for s in [-2.0, 0.0, 2.0] {
        for w in [10.0, 15.0, 20.0] {
            worst = worst.max((h_direct(s, w)?.value - h_resolvent(s, w)?.value).abs());
        }
    }
    c.le("max |direct - resolvent|", worst, 1e-7);
    let d = h_direct(0.0, 20.0)?.value;
    let e1 = (h_expansion(0.0, 20.0, 1)?.value - d).abs();
    let e2 = (h_expansion(0.0, 20.0, 2)?.value - d).abs();
    c.holds(
        "two terms beat one at (0, 20)",
        e2 < e1,
        format!("{e2:.3e} < {e1:.3e}"),
    );
    // Leading constant of h·w^{3/2}e^{∫q}/Q₀, one Richardson step in 1/w.
    let q0 = -v_of_s(0.0)?;
    let scale = (-int_q(0.0)?).exp() * q0;
    let lead = |w: f64| -> Result<f64> { Ok(h_direct(0.0, w)?.value * w.powf(1.5) / scale) };
    let fit = 2.0 * lead(80.0)? - lead(40.0)?;
    c.le(
        "prefactor vs sqrt(pi)/4, relative",
        (fit / (PI.sqrt() / 4.0) - 1.0).abs(),
        0.02,
    );
    Ok(c.verdict())
}

fn density_routes() -> Result<Verdict> {
    let g = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut worst: f64 = 0.0;
    for m in g {
        for t in g {
            worst = worst.max((phat_joint(m, t)? - phat_joint_mfqr(m, t)?).abs());
        }
    }
    let mut c = Checks::default();
    c.le("max |schehr - mfqr| on 5x5", worst, 1e-6);
    Ok(c.verdict())
}

/// Largest t with 2^{4/3}t inside the density's w range.
fn t_cap() -> f64 {
    MAX_W / TWO_13.powi(4)
}

fn probability_axioms() -> Result<Verdict> {
    let mut c = Checks::default();
    // Gauss-Legendre over a split of [0, t_cap]; the density is even.
    let mut total = 0.0;
    for (a, b) in [(0.0, 1.0), (1.0, 2.0), (2.0, t_cap())] {
        let r = map_finite(&gauss_legendre(24)?, a, b);
        for (t, w) in r.nodes.iter().zip(&r.weights) {
            total += 2.0 * w * phat_marginal(*t)?;
        }
    }
    c.le("|int P - 1|", (total - 1.0).abs(), 1e-3);

    let mut odd: f64 = 0.0;
    for t in [0.4, 1.1, 1.9] {
        odd = odd.max((phat_marginal(t)? - phat_marginal(-t)?).abs());
    }
    for (m, t) in [(-0.7, 0.6), (0.2, 1.3)] {
        odd = odd.max((phat_joint(m, t)? - phat_joint(m, -t)?).abs());
    }
    c.le("evenness", odd, 1e-8);

    let two23 = TWO_13 * TWO_13;
    let r = map_finite(&gauss_legendre(48)?, 0.0, t_cap());
    let mut worst: f64 = 0.0;
    for m in [-1.0, 0.0, 1.0] {
        let s = two23 * m;
        // GOE density by a six-point central difference of F₁.
        let h = 2e-3;
        let f = |k: f64| f1_fredholm(s + k * h);
        let d = (-f(-3.0)? + 9.0 * f(-2.0)? - 45.0 * f(-1.0)? + 45.0 * f(1.0)? - 9.0 * f(2.0)?
            + f(3.0)?)
            / (60.0 * h);
        let mut marginal = 0.0;
        for (t, w) in r.nodes.iter().zip(&r.weights) {
            marginal += 2.0 * w * phat_joint(m, *t)?;
        }
        worst = worst.max((marginal - two23 * d).abs());
    }
    c.le("m-marginal vs GOE density", worst, 1e-4);
    Ok(c.verdict())
}

fn density_trend() -> Result<Verdict> {
    let mut c = Checks::default();
    let mut dev = Vec::new();
    for t in [1.6, 2.0, 2.4] {
        dev.push((phat_marginal(t)? / phat_asym(t)?.value - 1.0).abs());
    }
    c.holds(
        "|r - 1| decreasing at t = 1.6, 2.0, 2.4",
        dev[0] > dev[1] && dev[1] > dev[2],
        format!("{:.4} {:.4} {:.4}", dev[0], dev[1], dev[2]),
    );
    c.le("|r(2.4) - 1|", dev[2], 0.2);
    Ok(c.verdict())
}

fn tail_probability() -> Result<Verdict> {
    let mut c = Checks::default();
    let r = tail_prob(2.0)? / tail_asym(2.0)?.value;
    c.holds(
        "tail ratio at 2",
        (0.7..=1.3).contains(&r),
        format!("{r:.4} in [0.7, 1.3]"),
    );
    let mut worst: f64 = 0.0;
    for t in [2.0, 3.0, 4.0] {
        let e = tail_asym(t)?;
        let q = integrate_adaptive(
            |s| phat_asym(s).map_or(f64::NAN, |v| 2.0 * v.value),
            t,
            t + 6.0,
            1e-13,
        )?;
        worst = worst.max((q - e.value).abs() / e.next_order);
    }
    c.le("change of variables, units of next_order", worst, 1.0);
    Ok(c.verdict())
}

fn constants_web() -> Result<Verdict> {
    let mut c = Checks::default();
    let k = constants();
    c.le(
        "|tau/(2^(11/8) kappa) - 1|",
        (k.tau / (2f64.powf(11.0 / 8.0) * k.kappa) - 1.0).abs(),
        1e-12,
    );
    c.le("|C/(tau/2) - 1|", (k.c / (k.tau / 2.0) - 1.0).abs(), 1e-12);
    let scale = TWO_13.powi(4);
    let mut worst: f64 = 0.0;
    for t in [2.0, 2.5, 3.0] {
        worst =
            worst.max((scale * p_asym_total(scale * t)?.value / phat_asym(t)?.value - 1.0).abs());
    }
    c.le("rescaled density identity", worst, 1e-12);
    // ζ'(-1) = 1/12 - log A with Glaisher's constant A.
    let zp = 1.0 / 12.0 - 1.282_427_129_100_622_6_f64.ln();
    let tau = 2f64.powf(-29.0 / 6.0) * 1.25f64.exp() * (zp / 2.0).exp() * PI.powf(1.5);
    let tau1 = (zp / 2.0).exp() / 2f64.powf(11.0 / 48.0);
    c.le("|tau - 0.62660|", (tau - 0.62660).abs(), 5e-6);
    c.le("|tau1 - 0.78537|", (tau1 - 0.78537).abs(), 5e-6);
    Ok(c.verdict())
}

/// 2^{-5/3}ψ(2^{1/3}x₁; σt', m')ψ(2^{1/3}x₂; -σt', m'), t' = 2^{-4/3}t,
/// m' = 2^{-2/3}m.
fn psi_product(x1: f64, x2: f64, m: f64, t: f64, sigma: f64) -> Result<f64> {
    let tt = sigma * t / TWO_13.powi(4);
    let mm = m / TWO_13.powi(2);
    Ok(psi_mfqr(TWO_13 * x1, tt, mm)? * psi_mfqr(TWO_13 * x2, -tt, mm)? / TWO_13.powi(5))
}

/// Largest |σ∂ₜΦ_{x₂x₁}(m, t) - product|; σ = -1 is the printed identity.
fn identity_residual(sigma: f64) -> Result<f64> {
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for x1 in [0.0, 0.4, 1.2] {
        for x2 in [0.1, 0.8, 1.4] {
            for m in [-0.8, 0.6] {
                for t in [-0.9, 1.1] {
                    let d = (phi_dot(x2, x1, m, t + h)? - phi_dot(x2, x1, m, t - h)?) / (2.0 * h);
                    worst = worst.max((sigma * d - psi_product(x1, x2, m, t, sigma)?).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn dotsenko_representation() -> Result<Verdict> {
    let mut c = Checks::default();
    c.le(
        "contour identity as printed",
        identity_residual(-1.0)?,
        1e-5,
    );
    c.note(format!(
        "sign-corrected identity {:.3e}",
        identity_residual(1.0)?
    ));
    let mut right: f64 = 0.0;
    let mut left: f64 = 0.0;
    for x in [0.0, 0.5, 1.0, 1.5] {
        let w = w_dist(x)?.w;
        let tail = w_main_density(x)?.w;
        right = right.max((w - tail).abs());
        left = left.max((w - (1.0 - tail)).abs());
    }
    c.le("|W(x) - int_x^inf P|", right, 1e-3);
    c.note(format!("|W(x) - int_-inf^x P| {left:.3e}"));
    c.le("|W(0) - 1/2|", (w_dist(0.0)?.w - 0.5).abs(), 1e-3);
    Ok(c.verdict())
}

fn laplace_families() -> Result<Verdict> {
    let mut c = Checks::default();
    let mut family =
        |name: &str, e: AsymptoticEval, g: &dyn Fn(f64) -> f64, a: f64, b: f64| -> Result<()> {
            let q = integrate_adaptive(g, a, b, 1e-13)?;
            let miss = (e.value - q).abs();
            // The exact families have a zero estimate; allow roundoff there.
            c.le(name, miss, e.next_term_estimate.max(1e-14 * q.abs()));
            Ok(())
        };
    let w = 10.0;
    family(
        "interior u^2, f=1",
        laplace_interior(|u| u * u, |_| 1.0, -8.0, 8.0, 0.0, w)?,
        &|u| (-w * u * u).exp(),
        -8.0,
        8.0,
    )?;
    family(
        "interior u^2, f=1+u^2",
        laplace_interior(|u| u * u, |u| 1.0 + u * u, -5.0, 5.0, 0.0, w)?,
        &|u| (1.0 + u * u) * (-w * u * u).exp(),
        -5.0,
        5.0,
    )?;
    let w = 20.0;
    family(
        "interior cosh u - 1",
        laplace_interior(|u: f64| u.cosh() - 1.0, |_| 1.0, -5.0, 5.0, 0.0, w)?,
        &|u: f64| (-w * (u.cosh() - 1.0)).exp(),
        -5.0,
        5.0,
    )?;
    family(
        "boundary u, f=1",
        laplace_boundary(|u| u, |_| 1.0, 0.0, w)?,
        &|u| (-w * u).exp(),
        0.0,
        3.0,
    )?;
    let w = 15.0;
    family(
        "boundary u+u^2",
        laplace_boundary(|u| u + u * u, |_| 1.0, 0.0, w)?,
        &|u| (-w * (u + u * u)).exp(),
        0.0,
        10.0,
    )?;
    let w = 20.0;
    family(
        "boundary u, f=e^u, a=1",
        laplace_boundary(|u| u, |u: f64| u.exp(), 1.0, w)?,
        &|u: f64| (u - w * u).exp(),
        1.0,
        12.0,
    )?;
    Ok(c.verdict())
}

type Criterion = fn() -> Result<Verdict>;

const CRITERIA: [(&str, Criterion); 12] = [
    ("F1 route equivalence", f1_routes),
    ("GOE tails", goe_tails),
    ("Hastings-McLeod", hastings_mcleod),
    ("K(0,s)", k_at_zero),
    ("h routes", h_routes),
    ("density equivalence", density_routes),
    ("probability axioms", probability_axioms),
    ("tail density trend", density_trend),
    ("tail probability", tail_probability),
    ("constants", constants_web),
    ("Dotsenko representation", dotsenko_representation),
    ("Laplace utilities", laplace_families),
];

fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

#[test]
fn acceptance_criteria() {
    report("");
    let mut passed = 0;
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let (pass, detail) = match outcome {
            Ok(Ok(v)) => (v.pass, v.detail),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        passed += pass as usize;
        let tag = if pass { "PASS" } else { "FAIL" };
        report(&format!("criterion {:>2} {tag} {name}: {detail}", k + 1));
    }
    report(&format!("{passed} of {} criteria pass", CRITERIA.len()));
}
