//! Cross-route checks. Each probe returns (residual, tolerance) and passes
//! when residual ≤ tolerance.

use std::f64::consts::PI;

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
use endpoint_tails::painleve::{f1_painleve, int_q, int_q2, q_asym, q_hm, v_of_s};
use endpoint_tails::Result;

use crate::pool::par_map;
use crate::table::{Table, Value};

const TWO_13: f64 = 1.259_921_049_894_873_2;

type Probe = fn() -> Result<(f64, f64)>;

fn max_abs(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in it {
        m = m.max(v?.abs());
    }
    Ok(m)
}

fn f1_routes() -> Result<(f64, f64)> {
    let r = max_abs((-10..=4).map(|k| {
        let s = k as f64;
        Ok(f1_fredholm(s)? - f1_painleve(s)?)
    }))?;
    Ok((r, 1e-8))
}

fn goe_left_tail() -> Result<(f64, f64)> {
    let e = f1_tail(-10.0, TailSide::Left, 4)?;
    Ok(((e.value - f1_fredholm(-10.0)?).abs(), e.next_term_estimate))
}

fn goe_right_tail() -> Result<(f64, f64)> {
    let e = f1_tail(8.0, TailSide::Right, 0)?;
    Ok(((e.value - f1_fredholm(8.0)?).abs(), e.next_term_estimate))
}

fn q_airy_right() -> Result<(f64, f64)> {
    let a = airy_ai(5.0);
    Ok(((q_hm(5.0)? - a).abs() / a, 1e-6))
}

fn q_expansion_left() -> Result<(f64, f64)> {
    let e = q_asym(-10.0, 3)?;
    Ok(((q_hm(-10.0)? - e.value).abs(), e.next_term_estimate))
}

/// |q'' - sq - 2q³| with a 5-point second difference, on [-10, 6].
fn painleve_ode() -> Result<(f64, f64)> {
    let h = 1e-2;
    let r = max_abs((0..=32).map(|k| {
        let s = -10.0 + 0.5 * k as f64;
        let q = q_hm(s)?;
        let d2 = (-q_hm(s + 2.0 * h)? + 16.0 * q_hm(s + h)? - 30.0 * q + 16.0 * q_hm(s - h)?
            - q_hm(s - 2.0 * h)?)
            / (12.0 * h * h);
        Ok(d2 - s * q - 2.0 * q.powi(3))
    }))?;
    Ok((r, 1e-6))
}

/// K(0, s) ≈ s²/4 (1 + 2√2(-s)^{-3/2} - 1/(2s³) - √2/(4(-s)^{9/2})), with
/// the O(s⁻⁶) term taken at unit coefficient.
fn k0_expansion() -> Result<(f64, f64)> {
    let s: f64 = -10.0;
    let t = -s;
    let sq2 = std::f64::consts::SQRT_2;
    let series = s * s / 4.0
        * (1.0 + 2.0 * sq2 * t.powf(-1.5) - 1.0 / (2.0 * s.powi(3)) - sq2 / 4.0 * t.powf(-4.5));
    Ok(((k_zero(s)? - series).abs(), s * s / 4.0 * t.powi(-6)))
}

fn k0_identity() -> Result<(f64, f64)> {
    let s = -6.0;
    Ok(((k_zero(s)? - q_hm(s)? - int_q2(s)?).abs(), 1e-7))
}

fn h_routes() -> Result<(f64, f64)> {
    let mut pts = Vec::new();
    for s in [-2.0, 0.0, 2.0] {
        for w in [10.0, 15.0, 20.0] {
            pts.push((s, w));
        }
    }
    let r = max_abs(
        pts.iter()
            .map(|&(s, w)| Ok(h_direct(s, w)?.value - h_resolvent(s, w)?.value)),
    )?;
    Ok((r, 1e-7))
}

fn h_expansion_order() -> Result<(f64, f64)> {
    let d = h_direct(0.0, 20.0)?.value;
    let e1 = (h_expansion(0.0, 20.0, 1)?.value - d).abs();
    let e2 = (h_expansion(0.0, 20.0, 2)?.value - d).abs();
    Ok((e2, e1))
}

/// Leading prefactor of h(0, w)·w^{3/2}/(-e^{-∫q}v(0)), extrapolated in 1/w
/// from w = 40 and 80, relative to √π/4.
fn h_prefactor() -> Result<(f64, f64)> {
    let scale = -(-int_q(0.0)?).exp() * v_of_s(0.0)?;
    let c = |w: f64| -> Result<f64> { Ok(h_direct(0.0, w)?.value * w.powf(1.5) / scale) };
    let fit = 2.0 * c(80.0)? - c(40.0)?;
    Ok(((fit / (PI.sqrt() / 4.0) - 1.0).abs(), 0.02))
}

fn density_routes() -> Result<(f64, f64)> {
    let g = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut pts = Vec::new();
    for m in g {
        for t in g {
            pts.push((m, t));
        }
    }
    let r = max_abs(
        pts.iter()
            .map(|&(m, t)| Ok(phat_joint(m, t)? - phat_joint_mfqr(m, t)?)),
    )?;
    Ok((r, 1e-6))
}

fn t_cap() -> f64 {
    MAX_W / (TWO_13 * TWO_13 * TWO_13 * TWO_13)
}

fn normalization() -> Result<(f64, f64)> {
    let r = map_finite(&gauss_legendre(40)?, 0.0, t_cap());
    let mut total = 0.0;
    for (t, c) in r.nodes.iter().zip(&r.weights) {
        total += 2.0 * c * phat_marginal(*t)?;
    }
    Ok(((total - 1.0).abs(), 1e-3))
}

fn evenness() -> Result<(f64, f64)> {
    let mut r = (phat_marginal(1.5)? - phat_marginal(-1.5)?).abs();
    for (m, t) in [(-0.5, 0.8), (0.3, 1.7)] {
        r = r.max((phat_joint(m, t)? - phat_joint(m, -t)?).abs());
    }
    Ok((r, 1e-8))
}

/// ∫P̂(m, t)dt against 2^{2/3}F₁'(2^{2/3}m) at m ∈ {-1, 0, 1}.
fn maximum_marginal() -> Result<(f64, f64)> {
    let two23 = TWO_13 * TWO_13;
    let r = map_finite(&gauss_legendre(40)?, 0.0, t_cap());
    let res = max_abs([-1.0, 0.0, 1.0].iter().map(|&m| {
        let s = two23 * m;
        let h = 1e-3;
        let f = f1_fredholm;
        let d =
            (f(s - 2.0 * h)? - 8.0 * f(s - h)? + 8.0 * f(s + h)? - f(s + 2.0 * h)?) / (12.0 * h);
        let mut marginal = 0.0;
        for (t, c) in r.nodes.iter().zip(&r.weights) {
            marginal += 2.0 * c * phat_joint(m, *t)?;
        }
        Ok(marginal - two23 * d)
    }))?;
    Ok((res, 1e-4))
}

fn density_vs_asymptotic() -> Result<(f64, f64)> {
    let r = phat_marginal(2.4)? / phat_asym(2.4)?.value;
    Ok(((r - 1.0).abs(), 0.2))
}

fn tail_vs_asymptotic() -> Result<(f64, f64)> {
    let r = tail_prob(2.0)? / tail_asym(2.0)?.value;
    Ok(((r - 1.0).abs(), 0.3))
}

/// Quadrature of 2P̂_asym over [t, t + 6] against the tail formula, in
/// units of its next_order term.
fn tail_change_of_variables() -> Result<(f64, f64)> {
    let mut worst: f64 = 0.0;
    for t in [2.0, 3.0, 4.0] {
        let tail = tail_asym(t)?;
        let mut bad = None;
        let q = integrate_adaptive(
            |s| match phat_asym(s) {
                Ok(v) => 2.0 * v.value,
                Err(e) => {
                    bad = Some(e);
                    f64::NAN
                }
            },
            t,
            t + 6.0,
            1e-13,
        )?;
        if let Some(e) = bad {
            return Err(e);
        }
        worst = worst.max((q - tail.value).abs() / tail.next_order);
    }
    Ok((worst, 1.0))
}

fn tau_kappa() -> Result<(f64, f64)> {
    let c = constants();
    Ok((
        (c.tau / (2f64.powf(11.0 / 8.0) * c.kappa) - 1.0).abs(),
        1e-12,
    ))
}

fn c_half_tau() -> Result<(f64, f64)> {
    let c = constants();
    Ok(((c.c / (c.tau / 2.0) - 1.0).abs(), 1e-12))
}

fn rescaled_density() -> Result<(f64, f64)> {
    let k = TWO_13.powi(4);
    let r = max_abs(
        [2.0, 2.5, 3.0]
            .iter()
            .map(|&t| Ok(k * p_asym_total(k * t)?.value / phat_asym(t)?.value - 1.0)),
    )?;
    Ok((r, 1e-12))
}

fn tau_digits() -> Result<(f64, f64)> {
    Ok(((constants().tau - 0.62660).abs(), 5e-6))
}

fn tau1_digits() -> Result<(f64, f64)> {
    Ok(((constants().tau1 - 0.78537).abs(), 5e-6))
}

/// 2^{-5/3}ψ(2^{1/3}x₁; σt', m')ψ(2^{1/3}x₂; -σt', m') with t' = 2^{-4/3}t and
/// m' = 2^{-2/3}m.
fn psi_product(x1: f64, x2: f64, m: f64, t: f64, sigma: f64) -> Result<f64> {
    let tt = sigma * t / TWO_13.powi(4);
    let mm = m / TWO_13.powi(2);
    Ok(psi_mfqr(TWO_13 * x1, tt, mm)? * psi_mfqr(TWO_13 * x2, -tt, mm)? / TWO_13.powi(5))
}

/// Largest |σ∂ₜΦ_{x₂x₁}(m, t) - product| over the identity grid, where σ = -1
/// is the printed form.
fn identity_residual(sigma: f64) -> Result<f64> {
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for x1 in [0.0, 0.3, 1.0] {
        for x2 in [0.2, 0.7, 1.5] {
            for m in [-1.0, 0.5] {
                for t in [-1.0, 1.0] {
                    let d = (phi_dot(x2, x1, m, t + h)? - phi_dot(x2, x1, m, t - h)?) / (2.0 * h);
                    worst = worst.max((sigma * d - psi_product(x1, x2, m, t, sigma)?).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn identity_printed() -> Result<(f64, f64)> {
    Ok((identity_residual(-1.0)?, 1e-5))
}

fn identity_sign_corrected() -> Result<(f64, f64)> {
    Ok((identity_residual(1.0)?, 1e-5))
}

fn dotsenko_pairs() -> Result<Vec<(f64, f64)>> {
    [0.0, 0.5, 1.0, 1.5]
        .iter()
        .map(|&x| Ok((w_dist(x)?.w, w_main_density(x)?.w)))
        .collect()
}

fn dotsenko_right_tail() -> Result<(f64, f64)> {
    let r = max_abs(dotsenko_pairs()?.into_iter().map(|(w, tail)| Ok(w - tail)))?;
    Ok((r, 1e-3))
}

fn dotsenko_left_cdf() -> Result<(f64, f64)> {
    let r = max_abs(
        dotsenko_pairs()?
            .into_iter()
            .map(|(w, tail)| Ok(w - (1.0 - tail))),
    )?;
    Ok((r, 1e-3))
}

fn dotsenko_half() -> Result<(f64, f64)> {
    Ok(((w_dist(0.0)?.w - 0.5).abs(), 1e-3))
}

/// |asymptotic - quadrature| in units of the evaluator's next_term_estimate.
fn laplace_ratio(e: AsymptoticEval, g: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let q = integrate_adaptive(g, a, b, 1e-13)?;
    Ok(((e.value - q).abs() / e.next_term_estimate, 1.0))
}

fn laplace_interior_quartic() -> Result<(f64, f64)> {
    let w = 10.0;
    let e = laplace_interior(|u| u * u, |u| 1.0 + u * u, -5.0, 5.0, 0.0, w)?;
    laplace_ratio(e, |u| (1.0 + u * u) * (-w * u * u).exp(), -5.0, 5.0)
}

fn laplace_interior_cosh() -> Result<(f64, f64)> {
    let w = 20.0;
    let e = laplace_interior(|u: f64| u.cosh() - 1.0, |_| 1.0, -5.0, 5.0, 0.0, w)?;
    laplace_ratio(e, |u: f64| (-w * (u.cosh() - 1.0)).exp(), -5.0, 5.0)
}

fn laplace_boundary_quadratic() -> Result<(f64, f64)> {
    let w = 15.0;
    let e = laplace_boundary(|u| u + u * u, |_| 1.0, 0.0, w)?;
    laplace_ratio(e, |u| (-w * (u + u * u)).exp(), 0.0, 10.0)
}

fn laplace_boundary_exponential() -> Result<(f64, f64)> {
    let w = 20.0;
    let e = laplace_boundary(|u| u, |u: f64| u.exp(), 1.0, w)?;
    laplace_ratio(e, |u: f64| (u - w * u).exp(), 1.0, 12.0)
}

const CHECKS: &[(&str, Probe)] = &[
    ("f1_fredholm_vs_painleve", f1_routes),
    ("goe_left_tail_s=-10", goe_left_tail),
    ("goe_right_tail_s=8", goe_right_tail),
    ("q_vs_airy_s=5_relative", q_airy_right),
    ("q_vs_expansion_s=-10", q_expansion_left),
    ("painleve_ode_residual", painleve_ode),
    ("k0_vs_expansion_s=-10", k0_expansion),
    ("k0_vs_q_plus_int_q2_s=-6", k0_identity),
    ("h_direct_vs_resolvent", h_routes),
    ("h_expansion_two_terms_beat_one", h_expansion_order),
    ("h_prefactor_sqrt_pi_over_4", h_prefactor),
    ("density_schehr_vs_mfqr", density_routes),
    ("density_normalization", normalization),
    ("density_evenness", evenness),
    ("maximum_marginal_vs_goe", maximum_marginal),
    ("density_vs_asymptotic_t=2.4", density_vs_asymptotic),
    ("tail_vs_asymptotic_t=2", tail_vs_asymptotic),
    ("tail_change_of_variables", tail_change_of_variables),
    ("tau_eq_2^(11/8)_kappa", tau_kappa),
    ("c_eq_tau_over_2", c_half_tau),
    ("rescaled_density_identity", rescaled_density),
    ("tau_digits_0.62660", tau_digits),
    ("tau1_digits_0.78537", tau1_digits),
    ("contour_identity_as_printed", identity_printed),
    ("contour_identity_sign_corrected", identity_sign_corrected),
    ("dotsenko_w_vs_right_tail", dotsenko_right_tail),
    ("dotsenko_w_vs_left_cdf", dotsenko_left_cdf),
    ("dotsenko_w0_half", dotsenko_half),
    ("laplace_interior_u2_f=1+u2", laplace_interior_quartic),
    ("laplace_interior_cosh", laplace_interior_cosh),
    ("laplace_boundary_u+u2", laplace_boundary_quadratic),
    ("laplace_boundary_u_f=exp", laplace_boundary_exponential),
];

/// Runs every check and returns the table with the number of failures.
pub fn run(threads: usize) -> (Table, usize) {
    let results = par_map(CHECKS, threads, |(name, probe)| (*name, probe()));
    let mut table = Table::new(&["check", "residual", "tolerance", "status"]);
    let mut failed = 0;
    for (name, r) in results {
        let (residual, tol) = match r {
            Ok(v) => v,
            Err(e) => {
                eprintln!("{name}: {e}");
                (f64::NAN, f64::NAN)
            }
        };
        let pass = residual <= tol;
        if !pass {
            failed += 1;
        }
        table.rows.push(vec![
            Value::Text(name.to_string()),
            residual.into(),
            tol.into(),
            (if pass { "PASS" } else { "FAIL" }).into(),
        ]);
    }
    (table, failed)
}
