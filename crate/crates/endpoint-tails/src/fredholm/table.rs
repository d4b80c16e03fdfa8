//! Fredholm data on a fixed s-grid: unit panels of Gauss–Legendre nodes on
//! [TABLE_LO, TABLE_HI], built lazily per panel and interpolated within a
//! panel by barycentric Lagrange interpolation.
//!
//! All nodes of a panel share one x-grid, so the resolvent values K(xⱼ, s)
//! interpolate in s just like the scalar data.

use std::sync::{Arc, OnceLock};

use super::{default_scale, sample_with, FredholmSample, Grid, ResolventK, DEFAULT_NODES};
use crate::error::{Error, Result};
use crate::numcore::quad::{gauss_legendre, map_finite};

pub const TABLE_LO: f64 = -10.0;
pub const TABLE_HI: f64 = 16.0;
pub const PANEL_NODES: usize = 20;
const NPANELS: usize = (TABLE_HI - TABLE_LO) as usize;

#[derive(Debug)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    /// s-nodes and Gauss weights on [a, b].
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub samples: Vec<FredholmSample>,
}

struct Reference {
    t: Vec<f64>,
    w: Vec<f64>,
    bary: Vec<f64>,
}

fn reference() -> &'static Reference {
    static R: OnceLock<Reference> = OnceLock::new();
    R.get_or_init(|| {
        let rule = gauss_legendre(PANEL_NODES).expect("valid node count");
        let bary = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .enumerate()
            .map(|(j, (t, w))| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * ((1.0 - t * t) * w).sqrt()
            })
            .collect();
        Reference {
            t: rule.nodes,
            w: rule.weights,
            bary,
        }
    })
}

fn build_panel(k: usize) -> Result<Panel> {
    let a = TABLE_LO + k as f64;
    let b = a + 1.0;
    let r = reference();
    let rule = map_finite(
        &crate::numcore::quad::QuadRule {
            nodes: r.t.clone(),
            weights: r.w.clone(),
            domain: crate::numcore::Domain::Finite { a: -1.0, b: 1.0 },
        },
        a,
        b,
    );
    let scale = default_scale(a);
    let mut samples = Vec::with_capacity(PANEL_NODES);
    let mut grid: Option<Arc<Grid>> = None;
    for &s in &rule.nodes {
        let mut smp = sample_with(s, DEFAULT_NODES, scale)?;
        // Same map for every node; share one copy of the grid.
        match &grid {
            Some(g) => smp.k.grid = g.clone(),
            None => grid = Some(smp.k.grid.clone()),
        }
        samples.push(smp);
    }
    Ok(Panel {
        a,
        b,
        nodes: rule.nodes,
        weights: rule.weights,
        samples,
    })
}

pub fn panel(k: usize) -> Result<&'static Panel> {
    static PANELS: [OnceLock<Result<Panel>>; NPANELS] = [const { OnceLock::new() }; NPANELS];
    if k >= NPANELS {
        return Err(Error::InvalidArgument(format!(
            "panel index {k} out of range"
        )));
    }
    PANELS[k]
        .get_or_init(|| build_panel(k))
        .as_ref()
        .map_err(Clone::clone)
}

fn panel_index(s: f64) -> usize {
    (((s - TABLE_LO).floor()) as isize).clamp(0, NPANELS as isize - 1) as usize
}

/// Barycentric interpolation weights at `s` for the nodes of a panel, or
/// the index of a coinciding node.
fn lagrange(p: &Panel, s: f64) -> std::result::Result<Vec<f64>, usize> {
    let r = reference();
    let t = (2.0 * s - p.a - p.b) / (p.b - p.a);
    let mut terms = Vec::with_capacity(PANEL_NODES);
    for (j, tj) in r.t.iter().enumerate() {
        let d = t - tj;
        if d == 0.0 {
            return Err(j);
        }
        terms.push(r.bary[j] / d);
    }
    let total: f64 = terms.iter().sum();
    Ok(terms.into_iter().map(|v| v / total).collect())
}

/// Fredholm data at any s in [TABLE_LO, TABLE_HI], interpolated.
pub fn sample_at(s: f64) -> Result<FredholmSample> {
    if !(TABLE_LO..=TABLE_HI).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "table sample at s = {s} outside [{TABLE_LO}, {TABLE_HI}]"
        )));
    }
    let p = panel(panel_index(s))?;
    let l = match lagrange(p, s) {
        Err(j) => return Ok(p.samples[j].clone()),
        Ok(l) => l,
    };
    let mut log_f1 = 0.0;
    let mut q = 0.0;
    let mut k0 = 0.0;
    let m = p.samples[0].k.values.len();
    let mut values = vec![0.0; m];
    for (lj, smp) in l.iter().zip(&p.samples) {
        log_f1 += lj * smp.log_f1;
        q += lj * smp.q;
        k0 += lj * smp.k0;
        for (v, kv) in values.iter_mut().zip(&smp.k.values) {
            *v += lj * kv;
        }
    }
    Ok(FredholmSample {
        s,
        log_f1,
        q,
        k0,
        k: ResolventK {
            s,
            grid: p.samples[0].k.grid.clone(),
            values,
        },
    })
}

/// Quadrature nodes (weight, sample) covering [a, b] ⊂ [TABLE_LO, TABLE_HI]:
/// stored nodes for whole panels, interpolated samples at mapped Gauss
/// nodes for partial ones.
pub fn quadrature(a: f64, b: f64) -> Result<Vec<(f64, FredholmSample)>> {
    if !(TABLE_LO <= a && a <= b && b <= TABLE_HI) {
        return Err(Error::InvalidArgument(format!(
            "table quadrature on [{a}, {b}] outside [{TABLE_LO}, {TABLE_HI}]"
        )));
    }
    let mut out = Vec::new();
    if a == b {
        return Ok(out);
    }
    let r = reference();
    let first = panel_index(a);
    let last = panel_index(b - 1e-15 * b.abs().max(1.0));
    for k in first..=last {
        let p = panel(k)?;
        let lo = a.max(p.a);
        let hi = b.min(p.b);
        if hi <= lo {
            continue;
        }
        if lo == p.a && hi == p.b {
            for (w, smp) in p.weights.iter().zip(&p.samples) {
                out.push((*w, smp.clone()));
            }
        } else {
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (t, w) in r.t.iter().zip(&r.w) {
                out.push((half * w, sample_at(mid + half * t)?));
            }
        }
    }
    Ok(out)
}

/// ∫ₐᵇ g(sample(s)) ds over the table.
pub fn integrate<G: FnMut(&FredholmSample) -> f64>(a: f64, b: f64, mut g: G) -> Result<f64> {
    Ok(quadrature(a, b)?.iter().map(|(w, smp)| w * g(smp)).sum())
}
