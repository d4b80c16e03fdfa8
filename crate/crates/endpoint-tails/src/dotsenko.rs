//! Dotsenko's formula for the endpoint distribution W(x) and its relation
//! to the main density.

use std::sync::OnceLock;

use crate::density::{p_marginal, MAX_W};
use crate::error::{Error, Result};
use crate::fredholm::{f1_fredholm, rho_matrix, RhoMatrix};
use crate::numcore::{airy_scale_exponent, airy_scaled_pair, gauss_legendre, map_finite};

const TWO_13: f64 = 1.259_921_049_894_873_2;
/// s-range of the outer integral.
pub const S_LO: f64 = -10.0;
pub const S_HI: f64 = 8.0;
/// |x| bound of w_dist.
pub const MAX_X: f64 = 2.5;
const S_NODES: usize = 48;
const Y_PANEL_NODES: usize = 16;
const Y_MAX_PANELS: usize = 80;
const Y_CUTOFF: f64 = 1e-16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotsenkoRoute {
    Resolvent,
    MainDensity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DotsenkoEval {
    pub x: f64,
    pub w: f64,
    pub route: DotsenkoRoute,
}

/// Ψ(ω; x) and ∂Ψ/∂ω from the closed form
/// Ψ = 2^{1/3}e^{-x³/24 - ωx/2}Ai(2^{1/3}(ω + x²/8)).
pub fn psi_dot_pair(omega: f64, x: f64) -> Result<(f64, f64)> {
    let xi = TWO_13 * (omega + x * x / 8.0);
    let (a, ap) = airy_scaled_pair(xi);
    let log = TWO_13.ln() - x.powi(3) / 24.0 - omega * x / 2.0 - airy_scale_exponent(xi);
    let d = -0.5 * x * a + TWO_13 * ap;
    let big = a.abs().max(d.abs());
    if big == 0.0 {
        return Ok((0.0, 0.0));
    }
    if log + big.ln() > 709.0 {
        return Err(Error::Overflow(format!("psi_dot({omega}, {x})")));
    }
    let e = log.exp();
    Ok((e * a, e * d))
}

pub fn psi_dot(omega: f64, x: f64) -> Result<f64> {
    psi_dot_pair(omega, x).map(|p| p.0)
}

fn y_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static R: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    R.get_or_init(|| {
        let r = map_finite(
            &gauss_legendre(Y_PANEL_NODES).expect("node count"),
            0.0,
            1.0,
        );
        (r.nodes, r.weights)
    })
}

/// ∫₀^∞ g(y) dy on unit panels, stopping after a panel whose terms all
/// sit below the peak-relative cutoff.
fn y_integral<G: FnMut(f64) -> Result<f64>>(mut g: G, what: &str) -> Result<f64> {
    let (t, c) = y_rule();
    let mut acc = 0.0;
    let mut peak: f64 = 0.0;
    for k in 0..Y_MAX_PANELS {
        let mut panel_max: f64 = 0.0;
        for (ti, ci) in t.iter().zip(c) {
            let v = g(k as f64 + ti)?;
            acc += ci * v;
            panel_max = panel_max.max(v.abs());
        }
        peak = peak.max(panel_max);
        if panel_max <= Y_CUTOFF * peak {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence {
        what: format!("y-integral of {what}"),
        estimate: f64::NAN,
        tol: Y_CUTOFF,
    })
}

/// Φ_{ωω'}(s, x) = -½∫₀^∞ [(∂_ω - ∂_ω')Ψ(ω + s/2 + y; x)Ψ(ω' + s/2 + y; -x)
/// + (∂_ω + ∂_ω')Ψ(ω + s/2 - y; x)Ψ(ω' + s/2 + y; -x)] dy.
pub fn phi_dot(omega: f64, omega_p: f64, s: f64, x: f64) -> Result<f64> {
    let c = 0.5 * s;
    let v = y_integral(
        |y| {
            let (ap, dap) = psi_dot_pair(omega + c + y, x)?;
            let (am, dam) = psi_dot_pair(omega + c - y, x)?;
            let (b, db) = psi_dot_pair(omega_p + c + y, -x)?;
            Ok(dap * b - ap * db + dam * b + am * db)
        },
        "phi_dot",
    )?;
    Ok(-0.5 * v)
}

/// ∬ρ_s(ω, ω')Φ_{ω'ω}(s, x) dω dω' in the Nyström representation of ρ_s.
/// Each y-node adds rank-one pieces, so only matrix-vector products with
/// the resolvent matrix are needed.
fn rho_phi(rho: &RhoMatrix, s: f64, x: f64) -> Result<f64> {
    let n = rho.grid.nodes.len();
    let c = 0.5 * s;
    let sq = &rho.sqrt_w;
    let mut b = vec![0.0; n];
    let mut db = vec![0.0; n];
    let mut lhs_b = vec![0.0; n];
    let mut lhs_db = vec![0.0; n];
    let mat_vec = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                rho.inverse.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    };
    let v = y_integral(
        |y| {
            for (i, om) in rho.grid.nodes.iter().enumerate() {
                let (p, dp) = psi_dot_pair(om + c + y, x)?;
                let (m, dm) = psi_dot_pair(om + c - y, x)?;
                let (bb, dbb) = psi_dot_pair(om + c + y, -x)?;
                lhs_b[i] = sq[i] * (dp + dm);
                lhs_db[i] = sq[i] * (m - p);
                b[i] = sq[i] * bb;
                db[i] = sq[i] * dbb;
            }
            let sb = mat_vec(&b);
            let sdb = mat_vec(&db);
            let mut acc = 0.0;
            for i in 0..n {
                acc += lhs_b[i] * sb[i] + lhs_db[i] * sdb[i];
            }
            Ok(acc)
        },
        "rho-weighted phi",
    )?;
    Ok(-0.5 * v)
}

struct OuterNode {
    s: f64,
    weight: f64,
    f1: f64,
    rho: RhoMatrix,
}

fn outer_nodes() -> Result<&'static [OuterNode]> {
    static NODES: OnceLock<Result<Vec<OuterNode>>> = OnceLock::new();
    NODES
        .get_or_init(|| {
            let r = map_finite(&gauss_legendre(S_NODES)?, S_LO, S_HI);
            r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(&s, &weight)| {
                    Ok(OuterNode {
                        s,
                        weight,
                        f1: f1_fredholm(s)?,
                        rho: rho_matrix(s)?,
                    })
                })
                .collect()
        })
        .as_deref()
        .map_err(Clone::clone)
}

/// W(x) = ∫F₁(s)∬ρ_s(ω, ω')Φ_{ω'ω}(s, x) dω dω' ds.
pub fn w_dist(x: f64) -> Result<DotsenkoEval> {
    if !(x.abs() <= MAX_X) {
        return Err(Error::InvalidArgument(format!(
            "w_dist: |x| = {} exceeds {MAX_X}",
            x.abs()
        )));
    }
    let mut acc = 0.0;
    for node in outer_nodes()? {
        acc += node.weight * node.f1 * rho_phi(&node.rho, node.s, x)?;
    }
    Ok(DotsenkoEval {
        x,
        w: acc,
        route: DotsenkoRoute::Resolvent,
    })
}

/// ∫ₓ^∞ P(w) dw from the marginal density.
pub fn w_main_density(x: f64) -> Result<DotsenkoEval> {
    if !(x.abs() <= MAX_W) {
        return Err(Error::InvalidArgument(format!(
            "w_main_density: |x| = {} exceeds {MAX_W}",
            x.abs()
        )));
    }
    let base = gauss_legendre(10)?;
    let panels = ((MAX_W - x).ceil() as usize).max(1);
    let h = (MAX_W - x) / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let a = x + k as f64 * h;
        let r = map_finite(&base, a, a + h);
        for (w, c) in r.nodes.iter().zip(&r.weights) {
            acc += c * p_marginal(*w)?;
        }
    }
    Ok(DotsenkoEval {
        x,
        w: acc,
        route: DotsenkoRoute::MainDensity,
    })
}
