//! Joint and marginal densities of the endpoint and the maximum.
//!
//! The Schehr route integrates h(u, w)h(u, -w) over the tabulated u-grid;
//! the MFQR route is a bilinear form in the resolvent of B_s.

use std::cell::Cell;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::asymptotics::phat_asym;
use crate::error::{Error, Result};
use crate::fredholm::{f1_fredholm, f_cumulative, rho_matrix, table, FredholmSample};
use crate::hfun::h_from_sample;
use crate::numcore::{airy_scale_exponent, airy_scaled_pair, integrate_adaptive};

/// |w| bound of the Schehr route.
pub const MAX_W: f64 = 10.0;
/// Lower end of the s-range.
pub const MIN_S: f64 = table::TABLE_LO;
/// t-bound of the numeric tail probability.
pub const MAX_TAIL_T: f64 = 2.8;

const TWO_13: f64 = 1.259_921_049_894_873_2;
const TWO_23: f64 = 1.587_401_051_968_199_5;
const TWO_43: f64 = 2.519_842_099_789_746_3;
const PEAK_CUTOFF: f64 = 1e-14;

fn prefactor() -> f64 {
    4.0 / (std::f64::consts::PI * std::f64::consts::PI)
}

fn check_w(w: f64, what: &str) -> Result<()> {
    if !w.is_finite() || w.abs() > MAX_W {
        return Err(Error::InvalidArgument(format!(
            "{what}: |w| = {} exceeds {MAX_W}",
            w.abs()
        )));
    }
    Ok(())
}

fn check_s(s: f64, what: &str) -> Result<()> {
    if !(MIN_S..=table::TABLE_HI).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "{what}: s = {s} outside [{MIN_S}, {}]",
            table::TABLE_HI
        )));
    }
    Ok(())
}

/// h(u, w)h(u, -w) and its propagated error.
fn h_product(smp: &FredholmSample, w: f64) -> Result<(f64, f64)> {
    let (hp, mp) = h_from_sample(smp, w)?;
    let (hm, mm) = h_from_sample(smp, -w)?;
    let err = 1e-13 * (mp * hm.abs() + mm * hp.abs());
    Ok((hp * hm, err))
}

/// Σ weight·g over the nodes in order, stopping after a whole panel of
/// nodes below the peak-relative cutoff.
fn truncated_sum<'a, I>(nodes: I, w: f64) -> Result<(f64, f64)>
where
    I: Iterator<Item = (f64, &'a FredholmSample, f64)>,
{
    let mut peak: f64 = 0.0;
    let mut quiet = 0;
    let mut acc = 0.0;
    let mut err = 0.0;
    for (wt, smp, factor) in nodes {
        let (g, e) = h_product(smp, w)?;
        let g = g * factor;
        peak = peak.max(g.abs());
        acc += wt * g;
        err += wt * e * factor;
        if g.abs() < PEAK_CUTOFF * peak {
            quiet += 1;
            if quiet >= table::PANEL_NODES {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok((acc, err))
}

/// Joint density P(s, w) of the maximum and the endpoint, with the
/// propagated error of the h values.
pub fn p_joint_schehr_eval(s: f64, w: f64) -> Result<(f64, f64)> {
    check_s(s, "p_joint_schehr")?;
    check_w(w, "p_joint_schehr")?;
    let f1 = table::sample_at(s)?.f1();
    let nodes = table::quadrature(s, table::TABLE_HI)?;
    let (sum, err) = truncated_sum(nodes.iter().map(|(wt, smp)| (*wt, smp, 1.0)), w)?;
    let c = prefactor() * f1;
    Ok((c * sum, c * err))
}

/// P(s, w) = (4/π²)F₁(s)∫ₛ^∞ h(u, w)h(u, -w) du.
pub fn p_joint_schehr(s: f64, w: f64) -> Result<f64> {
    p_joint_schehr_eval(s, w).map(|r| r.0)
}

/// Table nodes with F(u) = ∫_{-∞}^u F₁ attached.
fn marginal_nodes() -> Result<&'static [(f64, FredholmSample, f64)]> {
    static NODES: OnceLock<Result<Vec<(f64, FredholmSample, f64)>>> = OnceLock::new();
    NODES
        .get_or_init(|| {
            table::quadrature(table::TABLE_LO, table::TABLE_HI)?
                .into_iter()
                .map(|(wt, smp)| Ok((wt, f_cumulative(smp.s)?, smp)))
                .map(|r: Result<_>| r.map(|(wt, f, smp)| (wt, smp, f)))
                .collect()
        })
        .as_deref()
        .map_err(Clone::clone)
}

/// Marginal density of the endpoint in the unscaled variable, with the
/// propagated error of the h values. Exchanging the s- and u-integrals
/// turns ∫P(s, w)ds into (4/π²)∫F(u)h(u, w)h(u, -w)du.
pub fn p_marginal_eval(w: f64) -> Result<(f64, f64)> {
    check_w(w, "p_marginal")?;
    let nodes = marginal_nodes()?;
    let (sum, err) = truncated_sum(nodes.iter().map(|(wt, smp, f)| (*wt, smp, *f)), w)?;
    Ok((prefactor() * sum, prefactor() * err))
}

pub fn p_marginal(w: f64) -> Result<f64> {
    p_marginal_eval(w).map(|r| r.0)
}

/// P̂(m, t) = 4P(2^{2/3}m, 2^{4/3}t).
pub fn phat_joint(m: f64, t: f64) -> Result<f64> {
    Ok(4.0 * p_joint_schehr(TWO_23 * m, TWO_43 * t)?)
}

/// P̂(t) = 2^{4/3}P(2^{4/3}t).
pub fn phat_marginal(t: f64) -> Result<f64> {
    Ok(TWO_43 * p_marginal(TWO_43 * t)?)
}

/// ψ(x; t, m) = 2e^{xt}[tAi(t² + m + x) + Ai'(t² + m + x)].
pub fn psi_mfqr(x: f64, t: f64, m: f64) -> Result<f64> {
    if !(x >= 0.0) || !t.is_finite() || !m.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "psi_mfqr: (x, t, m) = ({x}, {t}, {m})"
        )));
    }
    let z = t * t + m + x;
    let (a, ap) = airy_scaled_pair(z);
    let bracket = t * a + ap;
    if bracket == 0.0 {
        return Ok(0.0);
    }
    let log = std::f64::consts::LN_2 + x * t - airy_scale_exponent(z) + bracket.abs().ln();
    if log > 709.0 {
        return Err(Error::Overflow(format!(
            "psi_mfqr({x}, {t}, {m}) = exp({log})"
        )));
    }
    Ok(bracket.signum() * log.exp())
}

/// P̂(m, t) = 2^{1/3}F₁(2^{2/3}m)∬ψ(2^{1/3}x₁; -t, m)ρ(x₁, x₂)ψ(2^{1/3}x₂; t, m),
/// with ρ the kernel of (1 - B_s)⁻¹ at s = 2^{2/3}m.
pub fn phat_joint_mfqr(m: f64, t: f64) -> Result<f64> {
    let s = TWO_23 * m;
    if !(s >= MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "phat_joint_mfqr: 2^(2/3)m = {s} below {MIN_S}"
        )));
    }
    let rho = rho_matrix(s)?;
    let mut f = Vec::with_capacity(rho.grid.nodes.len());
    let mut g = Vec::with_capacity(rho.grid.nodes.len());
    for &x in &rho.grid.nodes {
        f.push(psi_mfqr(TWO_13 * x, -t, m)?);
        g.push(psi_mfqr(TWO_13 * x, t, m)?);
    }
    Ok(TWO_13 * f1_fredholm(s)? * rho.bilinear(&f, &g))
}

/// ℙ(|𝒯| > t) = 2∫ₜ^∞ P̂, truncated where P̂ has dropped 1e-16 below P̂(t).
pub fn tail_prob(t: f64) -> Result<f64> {
    tail_prob_with(t, 1e-12)
}

/// [`tail_prob`] with the adaptive quadrature tolerance `tol`.
pub fn tail_prob_with(t: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tail_prob: tol = {tol}")));
    }
    if !(0.0..=MAX_TAIL_T).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "tail_prob: t = {t} outside [0, {MAX_TAIL_T}]"
        )));
    }
    let t_cap = MAX_W / TWO_43;
    let start = phat_marginal(t)?;
    let mut t_max = t;
    while t_max < t_cap {
        t_max = (t_max + 0.25).min(t_cap);
        if phat_marginal(t_max)? < 1e-16 * start {
            break;
        }
    }
    let failure: Cell<Option<Error>> = Cell::new(None);
    let value = integrate_adaptive(
        |s| match phat_marginal(s) {
            Ok(v) => 2.0 * v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        t,
        t_max,
        tol,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMethod {
    Schehr,
    Mfqr,
    Asymptotic,
}

impl DensityMethod {
    pub fn name(self) -> &'static str {
        match self {
            DensityMethod::Schehr => "schehr",
            DensityMethod::Mfqr => "mfqr",
            DensityMethod::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub t: f64,
    pub value: f64,
    pub method: DensityMethod,
    pub error_estimate: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DensityTable {
    pub rows: Vec<DensityRow>,
}

impl DensityTable {
    /// P̂(t) at each t. The asymptotic rows use |t| ≥ 1.
    pub fn marginal(ts: &[f64], method: DensityMethod) -> Result<Self> {
        let mut rows = Vec::with_capacity(ts.len());
        for &t in ts {
            let (value, error_estimate) = match method {
                DensityMethod::Schehr => {
                    let (v, e) = p_marginal_eval(TWO_43 * t)?;
                    (TWO_43 * v, TWO_43 * e)
                }
                DensityMethod::Asymptotic => {
                    let a = phat_asym(t.abs())?;
                    (a.value, a.next_order)
                }
                DensityMethod::Mfqr => {
                    return Err(Error::InvalidArgument(
                        "the MFQR route gives the joint density only".into(),
                    ))
                }
            };
            rows.push(DensityRow {
                t,
                value,
                method,
                error_estimate,
            });
        }
        Ok(DensityTable { rows })
    }

    /// Nonnegativity up to 1e-9 and agreement of rows at t and -t to 1e-8.
    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.rows {
            if r.value < -1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "negative density {} at t = {}",
                    r.value, r.t
                )));
            }
            let mirror = self
                .rows
                .iter()
                .find(|o| o.method == r.method && o.t == -r.t);
            if let Some(o) = mirror {
                if (o.value - r.value).abs() > 1e-8 {
                    return Err(Error::InvalidArgument(format!(
                        "asymmetric density at t = ±{}: {} vs {}",
                        r.t.abs(),
                        r.value,
                        o.value
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value,method,error_estimate\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{},{:.16e}",
                r.t,
                r.value,
                r.method.name(),
                r.error_estimate
            );
        }
        out
    }
}
