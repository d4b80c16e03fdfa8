//! Taylor expansion at ζ = 0 of the Lax-pair solution Ψ(ζ, s) whose
//! entries Φ₁, Φ₂ enter the kernel function h(s, w).
//!
//! With A(ζ, s) = A0 + A1 ζ + A2 ζ² the ζ-equation ∂Ψ/∂ζ = AΨ gives
//! (n+1)Ψₙ₊₁ = A0Ψₙ + A1Ψₙ₋₁ + A2Ψₙ₋₂ for the coefficients Ψ = Σ Ψₙ ζⁿ.

use crate::error::{Error, Result};
use crate::painleve::{painleve_sample, PainleveSample};

pub type Mat2 = [[f64; 2]; 2];

pub const DEFAULT_ORDER: usize = 40;
/// Orders up to this are accepted; the Gaussian quadrature for h at w ≈ 10
/// needs about 120.
pub const MAX_ORDER: usize = 200;
pub const MIN_S: f64 = -11.5;
/// Bound on the two last retained terms of a series, relative to its
/// largest term.
pub const TAIL_TOL: f64 = 1e-12;

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

fn mat_scale(a: &Mat2, c: f64) -> Mat2 {
    [[a[0][0] * c, a[0][1] * c], [a[1][0] * c, a[1][1] * c]]
}

/// Coefficient matrices of A(ζ, s) = A0 + A1ζ + A2ζ² and B(ζ, s) = B0 + B1ζ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaxCoefficients {
    pub a0: Mat2,
    pub a1: Mat2,
    pub a2: Mat2,
    pub b0: Mat2,
    pub b1: Mat2,
}

impl LaxCoefficients {
    pub fn from_sample(p: &PainleveSample) -> Self {
        let (q, v) = (p.q, p.v);
        LaxCoefficients {
            a0: [[0.0, v + 4.0 * p.q_prime], [-v, 0.0]],
            a1: [[4.0 * q, 0.0], [0.0, -4.0 * q]],
            a2: [[0.0, 4.0], [-4.0, 0.0]],
            b0: [[q, 0.0], [0.0, -q]],
            b1: [[0.0, 1.0], [-1.0, 0.0]],
        }
    }

    pub fn at(s: f64) -> Result<Self> {
        Ok(Self::from_sample(&painleve_sample(s)?))
    }

    /// A(ζ, s).
    pub fn a(&self, zeta: f64) -> Mat2 {
        mat_add(
            &mat_add(&self.a0, &mat_scale(&self.a1, zeta)),
            &mat_scale(&self.a2, zeta * zeta),
        )
    }

    /// B(ζ, s).
    pub fn b(&self, zeta: f64) -> Mat2 {
        mat_add(&self.b0, &mat_scale(&self.b1, zeta))
    }
}

/// Coefficients Ψ₀ … Ψ_N of Ψ(ζ, s) = Σ Ψₙ ζⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxSeries {
    pub s: f64,
    pub order: usize,
    pub lax: LaxCoefficients,
    /// ∫ₛ^∞ q.
    pub int_q: f64,
    pub coeffs: Vec<Mat2>,
}

pub fn lax_series(s: f64, order: usize) -> Result<LaxSeries> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "lax_series: order {order} above {MAX_ORDER}"
        )));
    }
    if !(s >= MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "lax_series: s = {s} below {MIN_S}"
        )));
    }
    let p = painleve_sample(s)?;
    Ok(series_from_sample(&p, order))
}

pub fn series_from_sample(p: &PainleveSample, order: usize) -> LaxSeries {
    let lax = LaxCoefficients::from_sample(p);
    let mut coeffs: Vec<Mat2> = Vec::with_capacity(order + 1);
    coeffs.push([[(-p.int_q).exp(), 0.0], [0.0, p.int_q.exp()]]);
    for n in 0..order {
        let mut next = mat_mul(&lax.a0, &coeffs[n]);
        if n >= 1 {
            next = mat_add(&next, &mat_mul(&lax.a1, &coeffs[n - 1]));
        }
        if n >= 2 {
            next = mat_add(&next, &mat_mul(&lax.a2, &coeffs[n - 2]));
        }
        coeffs.push(mat_scale(&next, 1.0 / (n + 1) as f64));
    }
    LaxSeries {
        s: p.s,
        order,
        lax,
        int_q: p.int_q,
        coeffs,
    }
}

/// Partial sum of one entry of the series, with the radius guard.
struct Summed {
    value: f64,
    derivative: f64,
}

impl LaxSeries {
    fn sum_entry(&self, zeta: f64, row: usize, col: usize, parity: usize) -> Result<Summed> {
        let mut value = 0.0;
        let mut derivative = 0.0;
        let mut largest: f64 = 0.0;
        let mut last = [0.0f64; 2];
        // Coefficients can pass close to zero, so both of the last two terms
        // must be negligible.
        let mut pw = if parity == 0 { 1.0 } else { zeta };
        let z2 = zeta * zeta;
        for n in (parity..=self.order).step_by(2) {
            let c = self.coeffs[n][row][col];
            let t = c * pw;
            value += t;
            if n > 0 {
                derivative += n as f64 * c * pw / zeta;
            }
            largest = largest.max(t.abs());
            last = [last[1], t];
            pw *= z2;
        }
        if zeta != 0.0 {
            if last[0].abs().max(last[1].abs()) > TAIL_TOL * largest {
                return Err(Error::RadiusExceeded(format!(
                    "series of order {} at ζ = {zeta}, s = {}: last terms {:e}, {:e}",
                    self.order, self.s, last[0], last[1]
                )));
            }
        }
        Ok(Summed { value, derivative })
    }

    /// Φ₁(ζ, s) = Σ Ψ₂ₙ⁽¹¹⁾ ζ²ⁿ.
    pub fn phi1(&self, zeta: f64) -> Result<f64> {
        Ok(self.sum_entry(zeta, 0, 0, 0)?.value)
    }

    /// Φ₂(ζ, s) = Σ Ψ₂ₙ₊₁⁽²¹⁾ ζ²ⁿ⁺¹.
    pub fn phi2(&self, zeta: f64) -> Result<f64> {
        Ok(self.sum_entry(zeta, 1, 0, 1)?.value)
    }

    /// (∂Φ₁/∂ζ, ∂Φ₂/∂ζ) by termwise differentiation.
    pub fn phi_derivatives(&self, zeta: f64) -> Result<(f64, f64)> {
        Ok((
            self.sum_entry(zeta, 0, 0, 0)?.derivative,
            self.sum_entry(zeta, 1, 0, 1)?.derivative,
        ))
    }

    /// The full matrix Ψ(ζ, s); each entry is guarded like Φ₁, Φ₂.
    pub fn psi(&self, zeta: f64) -> Result<Mat2> {
        Ok([
            [
                self.sum_entry(zeta, 0, 0, 0)?.value,
                self.sum_entry(zeta, 0, 1, 1)?.value,
            ],
            [
                self.sum_entry(zeta, 1, 0, 1)?.value,
                self.sum_entry(zeta, 1, 1, 0)?.value,
            ],
        ])
    }

    /// Largest ζ on a 1/64 grid up to which Φ₂ passes the guard.
    pub fn radius(&self) -> f64 {
        let mut z = 0.0;
        while z < 64.0 && self.sum_entry(z + 1.0 / 64.0, 1, 0, 1).is_ok() {
            z += 1.0 / 64.0;
        }
        z
    }
}

pub fn phi1(zeta: f64, s: f64) -> Result<f64> {
    lax_series(s, DEFAULT_ORDER)?.phi1(zeta)
}

pub fn phi2(zeta: f64, s: f64) -> Result<f64> {
    lax_series(s, DEFAULT_ORDER)?.phi2(zeta)
}

/// Qₙ(s) = e^{∫q} Ψ₂ₙ₊₁⁽²¹⁾ (2n+1)!/(n! 4ⁿ), the coefficient of w^{-n} in
/// the large-w expansion of h.
pub fn qn_poly(n: usize, s: f64) -> Result<f64> {
    if n > 25 {
        return Err(Error::InvalidArgument(format!("qn_poly: n = {n} above 25")));
    }
    let ser = lax_series(s, 2 * n + 1)?;
    Ok(qn_from_series(&ser, n))
}

pub fn qn_from_series(ser: &LaxSeries, n: usize) -> f64 {
    let mut factor = 1.0;
    for k in n + 1..=2 * n + 1 {
        factor *= k as f64;
    }
    factor /= 4f64.powi(n as i32);
    ser.int_q.exp() * ser.coeffs[2 * n + 1][1][0] * factor
}
