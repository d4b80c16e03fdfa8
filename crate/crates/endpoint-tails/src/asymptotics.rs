//! Closed-form asymptotics: the endpoint density and tail probability for
//! large |t|, the GOE tails, the left tail of F(u) = ∫_{-∞}^u F₁, the
//! saddle point u₀(w) of the exponent H(u|w), and the large-w density.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::fredholm::{self, f_cumulative, f_cumulative_tail, table};
use crate::numcore::laplace::AsymptoticEval;
use crate::numcore::{constants, AiryAsymCoeffs};
use crate::painleve::{int_q, q_hm};

/// φ(t) = t³ - 2t^{3/2} + 3t^{3/4}.
pub fn phi_exponent(t: f64) -> f64 {
    t * t * t - 2.0 * t.powf(1.5) + 3.0 * t.powf(0.75)
}

/// φ'(t) = 3t² - 3t^{1/2} + (9/4)t^{-1/4}.
pub fn phi_exponent_prime(t: f64) -> f64 {
    3.0 * t * t - 3.0 * t.sqrt() + 2.25 * t.powf(-0.25)
}

/// A two-term tail formula prefactor · e^{-(4/3)φ(t)} · t^{-p} · (1 + correction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailExpansion {
    pub t: f64,
    /// ln of prefactor · e^{-(4/3)φ(t)} · t^{-p}.
    pub leading: f64,
    pub value: f64,
    /// 15/(4t^{3/4}).
    pub correction: f64,
    /// value · t^{-3/2}.
    pub next_order: f64,
}

fn tail_expansion(t: f64, prefactor: f64, power: f64) -> Result<TailExpansion> {
    if !(t >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tail expansion needs t >= 1, got {t}"
        )));
    }
    let leading = prefactor.ln() - 4.0 / 3.0 * phi_exponent(t) - power * t.ln();
    let correction = 15.0 / (4.0 * t.powf(0.75));
    let value = leading.exp() * (1.0 + correction);
    Ok(TailExpansion {
        t,
        leading,
        value,
        correction,
        next_order: value * t.powf(-1.5),
    })
}

/// Large-t density of the endpoint: τ e^{-(4/3)φ(t)} t^{-81/32} (1 + 15/(4t^{3/4})).
pub fn phat_asym(t: f64) -> Result<TailExpansion> {
    tail_expansion(t, constants().tau, 81.0 / 32.0)
}

/// ℙ(|𝒯| > t) ≈ C e^{-(4/3)φ(t)} t^{-145/32} (1 + 15/(4t^{3/4})), C = τ/2.
pub fn tail_asym(t: f64) -> Result<TailExpansion> {
    tail_expansion(t, constants().c, 145.0 / 32.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSide {
    Left,
    Right,
}

/// Corrections of the GOE left tail in powers of |s|^{-3/2}.
const F1_LEFT: [f64; 5] = [
    1.0,
    -1.0 / (24.0 * SQRT_2),
    55.0 / 2304.0,
    -10675.0 / (165888.0 * SQRT_2),
    3970225.0 / 31850496.0,
];

/// Tails of F₁.
///
/// Right (s ≥ 4): 1 - e^{-(2/3)s^{3/2}}/(4√π s^{3/4}); the error estimate is
/// the correction times s^{-3/2}. Left (s ≤ -6): τ₁ e^{-|s|³/24 - |s|^{3/2}/(3√2)}
/// |s|^{-1/16} times the series with `nterms` ≤ 4 corrections; the estimate
/// is the next printed term, or |s|^{-15/2} after the last one.
pub fn f1_tail(s: f64, side: TailSide, nterms: usize) -> Result<AsymptoticEval> {
    match side {
        TailSide::Right => {
            if !(s >= 4.0) {
                return Err(Error::InvalidArgument(format!(
                    "right GOE tail needs s >= 4, got {s}"
                )));
            }
            let c = (-2.0 / 3.0 * s.powf(1.5)).exp() / (4.0 * PI.sqrt() * s.powf(0.75));
            Ok(AsymptoticEval {
                value: 1.0 - c,
                next_term_estimate: c * s.powf(-1.5),
            })
        }
        TailSide::Left => {
            if !(s <= -6.0) || nterms > 4 {
                return Err(Error::InvalidArgument(format!(
                    "left GOE tail needs s <= -6 and nterms <= 4, got s = {s}, nterms = {nterms}"
                )));
            }
            let t = -s;
            let r = t.powf(-1.5);
            let lead = constants().tau1
                * (-t.powi(3) / 24.0 - t.powf(1.5) / (3.0 * SQRT_2)).exp()
                * t.powf(-1.0 / 16.0);
            let series: f64 = (0..=nterms).map(|k| F1_LEFT[k] * r.powi(k as i32)).sum();
            let next = if nterms < 4 {
                F1_LEFT[nterms + 1].abs() * r.powi(nterms as i32 + 1)
            } else {
                r.powi(5)
            };
            Ok(AsymptoticEval {
                value: lead * series,
                next_term_estimate: lead * next,
            })
        }
    }
}

/// Left tail of F(u) = ∫_{-∞}^u F₁ through the |u|^{-6} correction; the
/// estimate is the size of the |u|^{-15/2} term.
pub fn f_cumulative_asym(u: f64) -> Result<AsymptoticEval> {
    if !(u <= -6.0) {
        return Err(Error::InvalidArgument(format!(
            "f_cumulative_asym needs u <= -6, got {u}"
        )));
    }
    let (value, next_term_estimate) = f_cumulative_tail(u);
    Ok(AsymptoticEval {
        value,
        next_term_estimate,
    })
}

/// Series for the minimum u₀(w) of H(·|w).
pub fn u0_critical(w: f64) -> Result<f64> {
    if !(w >= 8.0) {
        return Err(Error::InvalidArgument(format!(
            "u0_critical needs w >= 8, got {w}"
        )));
    }
    let r = w.powf(-0.75);
    Ok(-2.0 * w.sqrt() * (1.0 - 1.5 * r - 65.0 / 32.0 * r * r - 0.375 * r * r * r))
}

/// u₀(w) refined by one Newton step on H' from the series value.
pub fn u0_critical_refined(w: f64) -> Result<f64> {
    let u = u0_critical(w)?;
    let h = 1e-3;
    let d1 = h_exponent_h_prime(u, w)?;
    let d2 = (h_exponent_h_prime(u + h, w)? - h_exponent_h_prime(u - h, w)?) / (2.0 * h);
    Ok(u - d1 / d2)
}

fn check_radicand(u: f64, w: f64) -> Result<f64> {
    let r = 1.0 + 4.0 * u / (w * w);
    if !(w > 0.0) || !(r > 0.0) || !(u >= fredholm::MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "H(u|w) undefined at u = {u}, w = {w}"
        )));
    }
    Ok(r)
}

/// H(u|w) = -(1/w) ln F(u) + u/4 + (1/w)∫ᵤ^∞ q + (w²/24)(1 + 4u/w²)^{3/2}.
pub fn h_exponent_h(u: f64, w: f64) -> Result<f64> {
    let r = check_radicand(u, w)?;
    let f = f_cumulative(u)?;
    Ok(-f.ln() / w + u / 4.0 + int_q(u)? / w + w * w / 24.0 * r.powf(1.5))
}

fn f1_and_q(u: f64) -> Result<(f64, f64)> {
    if (table::TABLE_LO..=table::TABLE_HI).contains(&u) {
        let p = table::sample_at(u)?;
        Ok((p.f1(), p.q))
    } else {
        Ok((fredholm::log_f1_fredholm(u)?.exp(), q_hm(u)?))
    }
}

/// H'(u|w) = -F₁(u)/(wF(u)) + 1/4 - q(u)/w + (1/4)√(1 + 4u/w²).
pub fn h_exponent_h_prime(u: f64, w: f64) -> Result<f64> {
    let r = check_radicand(u, w)?;
    let (f1, q) = f1_and_q(u)?;
    let f = f_cumulative(u)?;
    Ok(-f1 / (w * f) + 0.25 - q / w + 0.25 * r.sqrt())
}

fn envelope_log(w: f64) -> f64 {
    -w.powi(3) / 12.0 + 2.0 / 3.0 * w.powf(1.5) - 2.0 * w.powf(0.75) - 81.0 / 32.0 * w.ln()
}

fn check_w4(w: f64) -> Result<()> {
    if !(w >= 4.0) {
        return Err(Error::InvalidArgument(format!(
            "large-w density needs w >= 4, got {w}"
        )));
    }
    Ok(())
}

/// Contribution of the region u > s near the saddle: κ·envelope·(1 + 17/(2w^{3/4})).
pub fn p1_asym(w: f64) -> Result<AsymptoticEval> {
    check_w4(w)?;
    let v = constants().kappa * envelope_log(w).exp() * (1.0 + 8.5 * w.powf(-0.75));
    Ok(AsymptoticEval {
        value: v,
        next_term_estimate: v * w.powf(-1.5),
    })
}

/// Second contribution: κ·envelope·(1 + 13/(2w^{3/4})).
pub fn p2_asym(w: f64) -> Result<AsymptoticEval> {
    check_w4(w)?;
    let v = constants().kappa * envelope_log(w).exp() * (1.0 + 6.5 * w.powf(-0.75));
    Ok(AsymptoticEval {
        value: v,
        next_term_estimate: v * w.powf(-1.5),
    })
}

/// P(w) ≈ 2κ e^{-w³/12 + (2/3)w^{3/2} - 2w^{3/4}} w^{-81/32} (1 + 15/(2w^{3/4})).
pub fn p_asym_total(w: f64) -> Result<AsymptoticEval> {
    let v = p1_asym(w)?.value + p2_asym(w)?.value;
    Ok(AsymptoticEval {
        value: v,
        next_term_estimate: v * w.powf(-1.5),
    })
}

fn check_pi(u: f64, w: f64) -> Result<()> {
    if !(w >= 4.0) || !((4.0 * u / (w * w)).abs() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "pi_factor: (u, w) = ({u}, {w}) out of range"
        )));
    }
    Ok(())
}

/// Π(u, w) ≈ 1 + 1/(3w³) + u²/(2w⁴).
pub fn pi_factor(u: f64, w: f64) -> Result<f64> {
    check_pi(u, w)?;
    Ok(1.0 + 1.0 / (3.0 * w.powi(3)) + u * u / (2.0 * w.powi(4)))
}

/// Π(u, w) = ½ Σₙ,ₘ (4u/w²)ⁿ (-3/2)ᵐ ξ^{-3m/2} [C(1/4, n) dₘ + C(-1/4, n) cₘ]
/// with ξ = 2^{-2/3}u + 2^{-8/3}w². The n-sum converges; the m-sum is
/// asymptotic and stopped at its smallest term.
pub fn pi_factor_series(u: f64, w: f64) -> Result<f64> {
    check_pi(u, w)?;
    let co = AiryAsymCoeffs::shared();
    let xi = 2f64.powf(-2.0 / 3.0) * u + 2f64.powf(-8.0 / 3.0) * w * w;
    let x = 4.0 * u / (w * w);
    let y = -1.5 * xi.powf(-1.5);
    // Binomial series in x for (1+x)^{1/4} and (1+x)^{-1/4}.
    let mut bp = 0.0;
    let mut bm = 0.0;
    let (mut cp, mut cm, mut xn) = (1.0, 1.0, 1.0);
    for n in 0..400 {
        bp += cp * xn;
        bm += cm * xn;
        let nf = n as f64;
        cp *= (0.25 - nf) / (nf + 1.0);
        cm *= (-0.25 - nf) / (nf + 1.0);
        xn *= x;
        if (cp * xn).abs().max((cm * xn).abs()) < 1e-18 {
            break;
        }
    }
    let mut total = 0.0;
    let mut prev = f64::INFINITY;
    let mut ym = 1.0;
    for m in 0..co.c.len() {
        let term = ym * (bp * co.d[m] + bm * co.c[m]);
        if term.abs() > prev {
            break;
        }
        total += term;
        prev = term.abs();
        ym *= y;
    }
    Ok(0.5 * total)
}
