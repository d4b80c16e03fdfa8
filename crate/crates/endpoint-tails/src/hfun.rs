//! The kernel function h(s, w) = ∫₀^∞ ζ Φ₂(ζ, s) e^{-wζ²} dζ and its
//! continuation to w < 0.
//!
//! Three routes: Gaussian quadrature of the Lax series (w > 0 only), the
//! resolvent form h = a(s, w) + ∫₀^∞ a(s + 2x, w) K(x, s) dx (any sign of w),
//! and the large-w expansion in the polynomials Qₙ.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fredholm::{self, table, FredholmSample};
use crate::lax::{qn_from_series, series_from_sample, LaxSeries, MAX_ORDER};
use crate::numcore::laplace::AsymptoticEval;
use crate::numcore::quad::{gauss_legendre, map_finite};
use crate::numcore::{airy_scale_exponent, airy_scaled_pair};
use crate::painleve::painleve_sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HRoute {
    Direct,
    Resolvent,
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HEvaluation {
    pub s: f64,
    pub w: f64,
    pub value: f64,
    pub route: HRoute,
    pub error_estimate: f64,
}

/// Resolvent route limits on |w| for each sign of w.
pub const MAX_W_POSITIVE: f64 = 24.0;
pub const MAX_W_NEGATIVE: f64 = 30.0;

/// Gaussian cutoff of the direct route: λ e^{-λ²/2} < 3e-17 beyond it.
const LAMBDA_MAX: f64 = 9.0;
const DIRECT_NODES: usize = 64;

/// Terms of the resolvent sum this far (in natural log) below the largest
/// are dropped.
const LOG_CUTOFF: f64 = 40.0;

/// ln|a(y, w)| and the sign of a(y, w), where
/// a(y, w) = (π/2^{4/3}) e^{w³/24 + wy/4} [Ai'(ξ) + (w/2^{4/3}) Ai(ξ)],
/// ξ = 2^{-2/3} y + 2^{-8/3} w².
pub fn a_closed_log(y: f64, w: f64) -> (f64, f64) {
    let c = 2f64.powf(-4.0 / 3.0);
    let xi = 2f64.powf(-2.0 / 3.0) * y + 2f64.powf(-8.0 / 3.0) * w * w;
    let (ai, aip) = airy_scaled_pair(xi);
    let bracket = aip + w * c * ai;
    if bracket == 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    let log = (PI * c).ln() + w * w * w / 24.0 + w * y / 4.0 - airy_scale_exponent(xi)
        + bracket.abs().ln();
    (log, bracket.signum())
}

/// a(y, w) = -∫₀^∞ ζ sin(4ζ³/3 + yζ) e^{-wζ²} dζ for w ≥ 0, continued to
/// w < 0 through its Airy closed form.
pub fn a_closed(y: f64, w: f64) -> Result<f64> {
    let (log, sign) = a_closed_log(y, w);
    if log > 709.0 {
        return Err(Error::Overflow(format!("a({y}, {w}) = exp({log})")));
    }
    Ok(sign * log.exp())
}

fn check_resolvent_w(w: f64) -> Result<()> {
    let ok = if w >= 0.0 {
        w <= MAX_W_POSITIVE
    } else {
        -w <= MAX_W_NEGATIVE
    };
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "h_resolvent: w = {w} out of range"
        )));
    }
    Ok(())
}

/// Fredholm data for the resolvent route: interpolated from the s-table
/// where it exists, solved directly otherwise.
pub fn fredholm_data(s: f64) -> Result<FredholmSample> {
    if (table::TABLE_LO..=table::TABLE_HI).contains(&s) {
        table::sample_at(s)
    } else {
        fredholm::sample(s)
    }
}

/// h(s, w) from given Fredholm data. Returns the value and the sum of the
/// magnitudes of the retained terms.
pub fn h_from_sample(smp: &FredholmSample, w: f64) -> Result<(f64, f64)> {
    let s = smp.s;
    let grid = &smp.k.grid;
    let mut logs = Vec::with_capacity(grid.nodes.len() + 1);
    logs.push(a_closed_log(s, w));
    for ((x, wt), k) in grid.nodes.iter().zip(&grid.weights).zip(&smp.k.values) {
        let (l, sg) = a_closed_log(s + 2.0 * x, w);
        let mag = wt * k.abs();
        if mag == 0.0 || sg == 0.0 {
            logs.push((f64::NEG_INFINITY, 0.0));
        } else {
            logs.push((l + mag.ln(), sg * k.signum()));
        }
    }
    let peak = logs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if peak > 709.0 {
        return Err(Error::Overflow(format!(
            "h({s}, {w}): terms of size exp({peak})"
        )));
    }
    let mut value = 0.0;
    let mut magnitude = 0.0;
    for (l, sg) in logs {
        if l < peak - LOG_CUTOFF {
            continue;
        }
        let t = l.exp();
        value += sg * t;
        magnitude += t;
    }
    Ok((value, magnitude))
}

/// Resolvent route; valid for either sign of w.
pub fn h_resolvent(s: f64, w: f64) -> Result<HEvaluation> {
    check_resolvent_w(w)?;
    let smp = fredholm_data(s)?;
    let (value, magnitude) = h_from_sample(&smp, w)?;
    Ok(HEvaluation {
        s,
        w,
        value,
        route: HRoute::Resolvent,
        error_estimate: 1e-13 * magnitude,
    })
}

/// Φ₂(ζ, s) = -sin(4ζ³/3 + sζ) - ∫₀^∞ sin(4ζ³/3 + (s + 2x)ζ) K(x, s) dx.
pub fn phi2_resolvent(zeta: f64, s: f64) -> Result<f64> {
    let smp = fredholm_data(s)?;
    let c = 4.0 / 3.0 * zeta.powi(3);
    let grid = &smp.k.grid;
    let mut acc = -(c + s * zeta).sin();
    for ((x, wt), k) in grid.nodes.iter().zip(&grid.weights).zip(&smp.k.values) {
        acc -= wt * (c + (s + 2.0 * x) * zeta).sin() * k;
    }
    Ok(acc)
}

fn direct_with(ser: &LaxSeries, w: f64, nodes: usize) -> Result<f64> {
    let rule = map_finite(&gauss_legendre(nodes)?, 0.0, LAMBDA_MAX);
    let r = (2.0 * w).sqrt();
    let mut acc = 0.0;
    for (l, wt) in rule.nodes.iter().zip(&rule.weights) {
        acc += wt * l * ser.phi2(l / r)? * (-0.5 * l * l).exp();
    }
    Ok(acc / (2.0 * w))
}

/// Direct route h(s, w) = (1/2w) ∫₀^∞ λ Φ₂(λ/√(2w), s) e^{-λ²/2} dλ with the
/// Lax series for Φ₂. Needs w ≳ 6.5 so the Gaussian keeps ζ inside the
/// series' reach.
pub fn h_direct(s: f64, w: f64) -> Result<HEvaluation> {
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "h_direct: w = {w} must be positive"
        )));
    }
    if !(s >= crate::lax::MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "h_direct: s = {s} out of range"
        )));
    }
    let ser = series_from_sample(&painleve_sample(s)?, MAX_ORDER);
    let value = direct_with(&ser, w, DIRECT_NODES)?;
    let coarse = direct_with(&ser, w, DIRECT_NODES * 3 / 4)?;
    Ok(HEvaluation {
        s,
        w,
        value,
        route: HRoute::Direct,
        error_estimate: (value - coarse).abs() + 1e-15 * value.abs(),
    })
}

/// Large-w expansion (√π/(4w^{3/2})) e^{-∫q} Σ_{n<nterms} Qₙ(s) w^{-n}.
pub fn h_expansion(s: f64, w: f64, nterms: usize) -> Result<AsymptoticEval> {
    if !(w >= 10.0) || !(-6.0..=6.0).contains(&s) || !(1..=25).contains(&nterms) {
        return Err(Error::InvalidArgument(format!(
            "h_expansion: (s, w, nterms) = ({s}, {w}, {nterms}) out of range"
        )));
    }
    let ser = series_from_sample(&painleve_sample(s)?, 2 * nterms + 1);
    let pre = PI.sqrt() / (4.0 * w.powf(1.5)) * (-ser.int_q).exp();
    let term = |n: usize| pre * qn_from_series(&ser, n) * w.powi(-(n as i32));
    Ok(AsymptoticEval {
        value: (0..nterms).map(term).sum(),
        next_term_estimate: term(nterms).abs(),
    })
}
