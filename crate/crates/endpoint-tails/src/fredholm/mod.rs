//! Nyström discretization of the Hankel operator with kernel Ai(x + y + s)
//! on L²(0, ∞): Fredholm determinants, resolvents and the function K(x, s).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numcore::airy::AiryScalar;
use crate::numcore::dd::Dd;
use crate::numcore::linalg::{Lu, Matrix};
use crate::numcore::quad::{gauss_legendre_in, map_semi_infinite};
use crate::numcore::{airy_ai, integrate_adaptive, Real};

pub mod table;

pub const DEFAULT_NODES: usize = 120;
pub const MAX_NODES: usize = 512;

/// Below this shift the operator norm is within ~1e-6 of one and the
/// discretized system is solved in double-double arithmetic.
pub const DD_BELOW: f64 = -4.0;

/// Smallest shift accepted by the public evaluators.
pub const MIN_S: f64 = -12.0;

/// Left end of the quadrature part of F(u); below it the tail expansion is used.
pub const CUMULATIVE_SPLICE: f64 = -9.0;

pub fn default_scale(s: f64) -> f64 {
    6.0 + (-s).max(0.0)
}

fn check_s(s: f64, what: &str) -> Result<()> {
    if !(s >= MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "{what}: s = {s} below {MIN_S}"
        )));
    }
    Ok(())
}

/// Quadrature grid on [0, ∞) shared by the operator and its resolvent.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct NystromOperator<T = f64> {
    pub s: f64,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    sqrt_w: Vec<T>,
    /// Symmetrized kernel √wᵢ Ai(xᵢ + xⱼ + s) √wⱼ.
    pub matrix: Matrix<T>,
    /// √wᵢ Ai(xᵢ + s).
    shifted_ai: Vec<T>,
    lu: Lu<T>,
}

impl<T: AiryScalar> NystromOperator<T> {
    pub fn build(s: f64, n: usize, scale: f64) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::InvalidArgument(format!(
                "nystrom_build: n = {n} outside 1..={MAX_NODES}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("nystrom_build: s = {s}")));
        }
        let rule = map_semi_infinite(&gauss_legendre_in::<T>(n)?, 0.0, scale)?;
        let st = T::from_f64(s);
        let sqrt_w: Vec<T> = rule.weights.iter().map(|w| w.sqrt()).collect();
        let mut matrix = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = sqrt_w[i] * T::airy(rule.nodes[i] + rule.nodes[j] + st).0 * sqrt_w[j];
                matrix.set(i, j, v);
                matrix.set(j, i, v);
            }
        }
        let shifted_ai = (0..n)
            .map(|i| sqrt_w[i] * T::airy(rule.nodes[i] + st).0)
            .collect();
        let lu = Lu::factor(identity_minus(&matrix, T::one()))?;
        Ok(NystromOperator {
            s,
            nodes: rule.nodes,
            weights: rule.weights,
            sqrt_w,
            matrix,
            shifted_ai,
            lu,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn grid(&self) -> Grid {
        Grid {
            nodes: self.nodes.iter().map(|x| x.to_f64()).collect(),
            weights: self.weights.iter().map(|w| w.to_f64()).collect(),
        }
    }

    /// Unweighted kernel values Ai(xᵢ + xⱼ + s).
    pub fn kernel_matrix(&self) -> Matrix<f64> {
        let n = self.len();
        let st = T::from_f64(self.s);
        let mut k = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = T::airy(self.nodes[i] + self.nodes[j] + st).0.to_f64();
                k.set(i, j, v);
                k.set(j, i, v);
            }
        }
        k
    }

    /// ln det(I − M) and its sign.
    pub fn log_det(&self) -> (f64, f64) {
        self.lu.log_det()
    }

    pub fn det(&self) -> f64 {
        let (l, sign) = self.log_det();
        sign * l.exp()
    }

    /// Solves (I − M) z = b.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        self.lu.solve(b)
    }

    /// Symmetrized resolvent (I − M)⁻¹.
    pub fn inverse(&self) -> Matrix<T> {
        self.lu.inverse()
    }

    /// Grid values K(xⱼ, s) of the solution of (1 − B)K = Ai(· + s), and
    /// K(0, s) and q(s) from the same solve.
    fn resolve_parts(&self) -> Result<(Vec<T>, T, T)> {
        let b = &self.shifted_ai;
        let zp = self.lu.solve(b);
        let lu_plus = Lu::factor(identity_minus(&self.matrix, -T::one()))?;
        let zm = lu_plus.solve(b);
        let ai_s = T::airy(T::from_f64(self.s)).0;
        let mut kp = ai_s;
        let mut km = ai_s;
        for ((bj, p), m) in b.iter().zip(&zp).zip(&zm) {
            kp += *bj * *p;
            km -= *bj * *m;
        }
        let half = T::from_f64(0.5);
        let q = half * (kp + km);
        let kvec = zp.iter().zip(&self.sqrt_w).map(|(z, r)| *z / *r).collect();
        Ok((kvec, kp, q))
    }
}

/// I + sign·M.
fn identity_minus<T: Real>(m: &Matrix<T>, sign: T) -> Matrix<T> {
    let n = m.n;
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let d = if i == j { T::one() } else { T::zero() };
            a.set(i, j, d - sign * m.get(i, j));
        }
    }
    a
}

/// K(·, s) on the Nyström grid with off-grid evaluation.
#[derive(Clone, Debug)]
pub struct ResolventK {
    pub s: f64,
    pub grid: Arc<Grid>,
    /// K(xⱼ, s).
    pub values: Vec<f64>,
}

impl ResolventK {
    /// K(x, s) = Ai(x + s) + Σⱼ wⱼ Ai(x + xⱼ + s) K(xⱼ, s).
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = airy_ai(x + self.s);
        for ((xj, wj), kj) in self
            .grid
            .nodes
            .iter()
            .zip(&self.grid.weights)
            .zip(&self.values)
        {
            acc += wj * airy_ai(x + xj + self.s) * kj;
        }
        acc
    }
}

/// Everything one Nyström solve yields at a single s.
#[derive(Clone, Debug)]
pub struct FredholmSample {
    pub s: f64,
    /// ln F₁(s).
    pub log_f1: f64,
    /// Hastings–McLeod q(s).
    pub q: f64,
    /// K(0, s) = q(s) + ∫ₛ^∞ q².
    pub k0: f64,
    pub k: ResolventK,
}

impl FredholmSample {
    pub fn f1(&self) -> f64 {
        self.log_f1.exp()
    }

    /// ∫ₛ^∞ q(x)² dx.
    pub fn int_q2(&self) -> f64 {
        self.k0 - self.q
    }
}

fn sample_in<T: AiryScalar>(s: f64, n: usize, scale: f64) -> Result<FredholmSample> {
    let op = NystromOperator::<T>::build(s, n, scale)?;
    let (log_f1, sign) = op.log_det();
    if sign <= 0.0 {
        return Err(Error::Singular(format!(
            "det(I - B) not positive at s = {s}"
        )));
    }
    let (kvec, k0, q) = op.resolve_parts()?;
    Ok(FredholmSample {
        s,
        log_f1,
        q: q.to_f64(),
        k0: k0.to_f64(),
        k: ResolventK {
            s,
            grid: Arc::new(op.grid()),
            values: kvec.iter().map(|v| v.to_f64()).collect(),
        },
    })
}

/// One Nyström solve at `s` with `n` nodes and the given map scale, in the
/// precision the shift requires.
pub fn sample_with(s: f64, n: usize, scale: f64) -> Result<FredholmSample> {
    if s < DD_BELOW {
        sample_in::<Dd>(s, n, scale)
    } else {
        sample_in::<f64>(s, n, scale)
    }
}

pub fn sample(s: f64) -> Result<FredholmSample> {
    check_s(s, "fredholm sample")?;
    sample_with(s, DEFAULT_NODES, default_scale(s))
}

pub fn nystrom_build(s: f64, n: usize, scale: f64) -> Result<NystromOperator<f64>> {
    NystromOperator::build(s, n, scale)
}

/// ln F₁(s) from the Nyström determinant.
pub fn log_f1_fredholm(s: f64) -> Result<f64> {
    log_f1_fredholm_with(s, DEFAULT_NODES)
}

/// ln F₁(s) with `n` Nyström nodes.
pub fn log_f1_fredholm_with(s: f64, n: usize) -> Result<f64> {
    check_s(s, "f1_fredholm")?;
    let scale = default_scale(s);
    let (l, sign) = if s < DD_BELOW {
        NystromOperator::<Dd>::build(s, n, scale)?.log_det()
    } else {
        NystromOperator::<f64>::build(s, n, scale)?.log_det()
    };
    if sign <= 0.0 {
        return Err(Error::Singular(format!(
            "det(I - B) not positive at s = {s}"
        )));
    }
    Ok(l)
}

/// GOE Tracy–Widom distribution F₁(s) = det(1 − B_s).
pub fn f1_fredholm(s: f64) -> Result<f64> {
    let l = log_f1_fredholm(s)?;
    let v = l.exp();
    if v < 1e-300 {
        return Err(Error::Underflow(format!("F1({s}) = exp({l})")));
    }
    Ok(v)
}

pub fn resolvent_k(s: f64) -> Result<ResolventK> {
    Ok(sample(s)?.k)
}

/// K(0, s).
pub fn k_zero(s: f64) -> Result<f64> {
    Ok(sample(s)?.k0)
}

/// Nyström form of (1 − B_s)⁻¹: the symmetrized inverse (I − M)⁻¹ together
/// with the grid. The bilinear form Σ √wᵢ f(xᵢ) Sᵢⱼ √wⱼ g(xⱼ) discretizes
/// ∬ f(x) ρ_s(x, y) g(y) dx dy, identity part included.
#[derive(Clone, Debug)]
pub struct RhoMatrix {
    pub s: f64,
    pub grid: Grid,
    pub sqrt_w: Vec<f64>,
    pub inverse: Matrix<f64>,
}

impl RhoMatrix {
    pub fn bilinear(&self, f: &[f64], g: &[f64]) -> f64 {
        let n = self.grid.nodes.len();
        let fw: Vec<f64> = f.iter().zip(&self.sqrt_w).map(|(a, b)| a * b).collect();
        let gw: Vec<f64> = g.iter().zip(&self.sqrt_w).map(|(a, b)| a * b).collect();
        let mut acc = 0.0;
        for i in 0..n {
            let row = &self.inverse.data[i * n..(i + 1) * n];
            let mut r = 0.0;
            for (a, b) in row.iter().zip(&gw) {
                r += a * b;
            }
            acc += fw[i] * r;
        }
        acc
    }

    /// Resolvent kernel R(xᵢ, xⱼ) with ρ = δ + R.
    pub fn kernel(&self, i: usize, j: usize) -> f64 {
        let d = if i == j { 1.0 } else { 0.0 };
        (self.inverse.get(i, j) - d) / (self.sqrt_w[i] * self.sqrt_w[j])
    }
}

fn rho_in<T: AiryScalar>(s: f64, n: usize, scale: f64) -> Result<RhoMatrix> {
    let op = NystromOperator::<T>::build(s, n, scale)?;
    let inv = op.inverse();
    let mut sym = Matrix::<f64>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            // Symmetrize to remove the roundoff asymmetry of the LU inverse.
            let v = 0.5 * (inv.get(i, j).to_f64() + inv.get(j, i).to_f64());
            sym.set(i, j, v);
        }
    }
    Ok(RhoMatrix {
        s,
        grid: op.grid(),
        sqrt_w: op.sqrt_w.iter().map(|v| v.to_f64()).collect(),
        inverse: sym,
    })
}

pub fn rho_matrix_with(s: f64, n: usize, scale: f64) -> Result<RhoMatrix> {
    if s < DD_BELOW {
        rho_in::<Dd>(s, n, scale)
    } else {
        rho_in::<f64>(s, n, scale)
    }
}

pub fn rho_matrix(s: f64) -> Result<RhoMatrix> {
    check_s(s, "rho_matrix")?;
    rho_matrix_with(s, DEFAULT_NODES, default_scale(s))
}

/// Left-tail expansion of F(u) = ∫_{-∞}^u F₁: value through the |u|^{-6}
/// correction and the size of the |u|^{-15/2} term. That coefficient,
/// -63518083369√2/15925248 ≈ -5641, follows from integrating the F₁
/// expansion by parts once more; it dominates the remainder for |u| ≲ 12.
pub fn f_cumulative_tail(u: f64) -> (f64, f64) {
    let t = -u;
    let tau1 = crate::numcore::constants().tau1;
    let r = t.powf(-1.5);
    let s2 = std::f64::consts::SQRT_2;
    let bracket = 1.0 - 97.0 * s2 / 48.0 * r - 19337.0 / 2304.0 * r * r
        + 24_666_605.0 * s2 / 331_776.0 * r.powi(3)
        + 1_358_238_769.0 / 31_850_496.0 * r.powi(4);
    let next = 63_518_083_369.0 * s2 / 15_925_248.0 * r.powi(5);
    let lead =
        8.0 * tau1 * t.powf(-33.0 / 16.0) * (-t.powi(3) / 24.0 - t.powf(1.5) / (3.0 * s2)).exp();
    (lead * bracket, (lead * next).abs())
}

/// F(u) = ∫_{-∞}^u F₁(s) ds.
pub fn f_cumulative(u: f64) -> Result<f64> {
    check_s(u, "f_cumulative")?;
    let base = f_cumulative_tail(CUMULATIVE_SPLICE).0;
    if u <= CUMULATIVE_SPLICE {
        return Ok(f_cumulative_tail(u).0);
    }
    let hi = u.min(table::TABLE_HI);
    let mut acc = base + table::integrate(CUMULATIVE_SPLICE, hi, |p| p.f1())?;
    if u > hi {
        acc += integrate_adaptive(|s| f1_fredholm(s).unwrap_or(1.0), hi, u, 1e-12)?;
    }
    Ok(acc)
}
