//! The Hastings–McLeod solution q(s) of q'' = sq + 2q³, its integrals, the
//! Painlevé form of F₁ and the s → -∞ expansions.

use std::collections::HashMap;
use std::f64::consts::{LN_2, SQRT_2};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fredholm::{self, table, NystromOperator, MIN_S};
use crate::numcore::linalg::{Lu, Matrix};
use crate::numcore::{airy_ai, integrate_adaptive, AsymptoticEval};

/// Number of coefficients of the s → -∞ expansion kept in memory.
const NCOEF: usize = 16;

/// Coefficients aₖ of q(-t) = √(t/2) Σ aₖ t^{-3k}, from the recursion
/// 2aₙ + Rₙ = aₙ₋₁(9(n-1)² - 1/4), Rₙ being the part of [f³]ₙ free of aₙ.
pub fn series_coefficients() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        let mut a = vec![1.0];
        for n in 1..NCOEF {
            a.push(0.0);
            let mut r = 0.0;
            for i in 0..=n {
                for j in 0..=(n - i) {
                    r += a[i] * a[j] * a[n - i - j];
                }
            }
            let nm = (n - 1) as f64;
            a[n] = (a[n - 1] * (9.0 * nm * nm - 0.25) - r) / 2.0;
        }
        a
    })
}

/// Coefficients of f² where f = Σ aₖ t^{-3k}.
fn squared_coefficients() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        let a = series_coefficients();
        (0..NCOEF)
            .map(|n| (0..=n).map(|i| a[i] * a[n - i]).sum())
            .collect()
    })
}

/// Sums terms until they stop decreasing in magnitude (optimal truncation).
fn sum_optimally(terms: impl Iterator<Item = f64>) -> f64 {
    let mut acc = 0.0;
    let mut last = f64::INFINITY;
    for (k, t) in terms.enumerate() {
        if k > 1 && t.abs() > last {
            break;
        }
        acc += t;
        if k > 0 {
            last = t.abs();
        }
    }
    acc
}

/// q(s) from the resolvent: q = ½(K₊(0) + K₋(0)) with K± = (1 ∓ B)⁻¹Ai(· + s).
pub fn q_hm(s: f64) -> Result<f64> {
    Ok(fredholm::sample(s)?.q)
}

/// q(s) by solving (1 - A)Q = B δ₀ with A = B² formed as the matrix square of
/// the symmetrized kernel, in 64-bit arithmetic.
pub fn q_hm_airy_kernel(s: f64, n: usize) -> Result<f64> {
    let op = NystromOperator::<f64>::build(s, n, fredholm::default_scale(s))?;
    let m = &op.matrix;
    let a = m.matmul(m);
    let mut ia = Matrix::<f64>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let d = if i == j { 1.0 } else { 0.0 };
            ia.set(i, j, d - a.get(i, j));
        }
    }
    let b: Vec<f64> = op
        .nodes
        .iter()
        .zip(&op.weights)
        .map(|(x, w)| w.sqrt() * airy_ai(x + s))
        .collect();
    let qt = Lu::factor(ia)?.solve(&b);
    let mq = m.mul_vec(&qt);
    Ok(airy_ai(s) + b.iter().zip(&mq).map(|(u, v)| u * v).sum::<f64>())
}

/// q'(s) by Richardson-extrapolated central differences of [`q_hm`].
pub fn q_prime(s: f64) -> Result<f64> {
    if !(s >= -11.5) {
        return Err(Error::InvalidArgument(format!(
            "q_prime: s = {s} below -11.5"
        )));
    }
    let h = 1e-3 * s.abs().max(1.0);
    let d = |h: f64| -> Result<f64> { Ok((q_hm(s + h)? - q_hm(s - h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// v(s) = s + 2q² - 2q'.
pub fn v_of_s(s: f64) -> Result<f64> {
    let q = q_hm(s)?;
    Ok(s + 2.0 * q * q - 2.0 * q_prime(s)?)
}

/// ∫ₛ^∞ Ai, used where q and Ai agree to all digits.
fn airy_tail_integral(s: f64) -> Result<f64> {
    integrate_adaptive(airy_ai, s, f64::INFINITY, 1e-13)
}

/// ∫_{-t}^∞ q for t ≥ 9: (√2/3)t^{3/2} + ½ ln 2 + termwise integral of the
/// expansion.
fn int_q_left(t: f64) -> f64 {
    let a = series_coefficients();
    let tail = sum_optimally(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, ak)| ak / SQRT_2 * t.powf(1.5 - 3.0 * k as f64) / (1.5 - 3.0 * k as f64)),
    );
    SQRT_2 / 3.0 * t.powf(1.5) + 0.5 * LN_2 + tail
}

/// ∫ₛ^∞ q(x) dx.
pub fn int_q(s: f64) -> Result<f64> {
    if !(s >= MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "int_q: s = {s} below {MIN_S}"
        )));
    }
    if s < table::TABLE_LO {
        return Ok(int_q_left(-s));
    }
    if s >= table::TABLE_HI {
        return airy_tail_integral(s);
    }
    Ok(table::integrate(s, table::TABLE_HI, |p| p.q)? + airy_tail_integral(table::TABLE_HI)?)
}

/// ∫ₛ^{s₀} (x - s) q(x)² dx from the expansion, with s < s₀ ≤ -9.
fn moment_q2_left(s: f64, s0: f64) -> f64 {
    let c = squared_coefficients();
    let (big_t, t0) = (-s, -s0);
    // q² = (t/2) Σ cₖ t^{-3k}; x - s = T - t.
    let prim = |t: f64| -> Vec<f64> {
        c.iter()
            .enumerate()
            .map(|(k, ck)| {
                let k = k as f64;
                let p1 = t.powf(2.0 - 3.0 * k) / (2.0 - 3.0 * k);
                let p2 = if k == 1.0 {
                    t.ln()
                } else {
                    t.powf(3.0 - 3.0 * k) / (3.0 - 3.0 * k)
                };
                0.5 * ck * (big_t * p1 - p2)
            })
            .collect()
    };
    let hi = prim(big_t);
    let lo = prim(t0);
    sum_optimally(hi.iter().zip(&lo).map(|(h, l)| h - l))
}

/// ∫ₛ^{s₀} q(x)² dx from the expansion, s < s₀ ≤ -9.
fn int_q2_left(s: f64, s0: f64) -> f64 {
    let c = squared_coefficients();
    let prim = |t: f64| -> Vec<f64> {
        c.iter()
            .enumerate()
            .map(|(k, ck)| 0.5 * ck * t.powf(2.0 - 3.0 * k as f64) / (2.0 - 3.0 * k as f64))
            .collect()
    };
    let hi = prim(-s);
    let lo = prim(-s0);
    sum_optimally(hi.iter().zip(&lo).map(|(h, l)| h - l))
}

/// ∫ₛ^∞∫ₜ^∞ q(x)² dx dt = ∫ₛ^∞ (x - s) q(x)² dx.
pub fn int_int_q2(s: f64) -> Result<f64> {
    if !(s >= MIN_S) {
        return Err(Error::InvalidArgument(format!(
            "int_int_q2: s = {s} below {MIN_S}"
        )));
    }
    // Beyond the table q² < 1e-38 and is dropped.
    if s >= table::TABLE_HI {
        return Ok(0.0);
    }
    if s >= table::TABLE_LO {
        return table::integrate(s, table::TABLE_HI, |p| (p.s - s) * p.q * p.q);
    }
    let s0 = table::TABLE_LO;
    let inner = table::integrate(s0, table::TABLE_HI, |p| (p.s - s0) * p.q * p.q)?;
    let mass = table::integrate(s0, table::TABLE_HI, |p| p.q * p.q)?;
    Ok(inner + (s0 - s) * mass + moment_q2_left(s, s0))
}

/// ∫ₛ^∞ q(x)² dx by quadrature of q (the resolvent gives it directly as
/// K(0, s) - q(s)).
pub fn int_q2(s: f64) -> Result<f64> {
    if s < table::TABLE_LO {
        let s0 = table::TABLE_LO;
        return Ok(table::integrate(s0, table::TABLE_HI, |p| p.q * p.q)? + int_q2_left(s, s0));
    }
    table::integrate(s.min(table::TABLE_HI), table::TABLE_HI, |p| p.q * p.q)
}

/// F₁(s) = exp(-½∫ₛ^∞ q - ½∫ₛ^∞(x - s)q²).
pub fn f1_painleve(s: f64) -> Result<f64> {
    Ok((-0.5 * int_q(s)? - 0.5 * int_int_q2(s)?).exp())
}

fn check_left(s: f64, what: &str) -> Result<f64> {
    if !(s <= -4.0) {
        return Err(Error::InvalidArgument(format!("{what}: s = {s} above -4")));
    }
    Ok(-s)
}

fn check_nterms(nterms: usize, max: usize, what: &str) -> Result<()> {
    if nterms + 1 >= max {
        return Err(Error::InvalidArgument(format!(
            "{what}: nterms = {nterms} too large"
        )));
    }
    Ok(())
}

/// q(s) ~ √(-s/2)(1 + 1/(8s³) - 73/(128s⁶) + 10657/(1024s⁹) + …) with
/// `nterms` corrections after the leading 1.
pub fn q_asym(s: f64, nterms: usize) -> Result<AsymptoticEval> {
    let t = check_left(s, "q_asym")?;
    check_nterms(nterms, NCOEF, "q_asym")?;
    let a = series_coefficients();
    let pre = (t / 2.0).sqrt();
    let term = |k: usize| pre * a[k] * t.powi(-3 * k as i32);
    Ok(AsymptoticEval {
        value: (0..=nterms).map(term).sum(),
        next_term_estimate: term(nterms + 1).abs(),
    })
}

/// q'(s) ~ -(1/(2^{3/2}√(-s)))(1 - 5/(8s³) + 803/(128s⁶) - …).
pub fn qp_asym(s: f64, nterms: usize) -> Result<AsymptoticEval> {
    let t = check_left(s, "qp_asym")?;
    check_nterms(nterms, NCOEF, "qp_asym")?;
    let a = series_coefficients();
    let pre = -1.0 / (2.0 * SQRT_2 * t.sqrt());
    let term = |k: usize| pre * a[k] * (1.0 - 6.0 * k as f64) * t.powi(-3 * k as i32);
    Ok(AsymptoticEval {
        value: (0..=nterms).map(term).sum(),
        next_term_estimate: term(nterms + 1).abs(),
    })
}

/// v(s) ~ (1/√(-2s))(1 - (-s)^{-3/2}/(2√2) - 5/(8s³) - …), in powers of
/// (-s)^{-3/2}.
pub fn v_asym(s: f64, nterms: usize) -> Result<AsymptoticEval> {
    let t = check_left(s, "v_asym")?;
    check_nterms(nterms / 2 + 1, NCOEF, "v_asym")?;
    let a = series_coefficients();
    let c = squared_coefficients();
    let pre = 1.0 / (2.0 * t).sqrt();
    let term = |m: usize| {
        let e = if m % 2 == 1 {
            SQRT_2 * c[m.div_ceil(2)]
        } else {
            let k = m / 2;
            a[k] * (1.0 - 6.0 * k as f64)
        };
        pre * e * t.powf(-1.5 * m as f64)
    };
    Ok(AsymptoticEval {
        value: (0..=nterms).map(term).sum(),
        next_term_estimate: term(nterms + 1).abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PainleveSample {
    pub s: f64,
    pub q: f64,
    pub q_prime: f64,
    /// ∫ₛ^∞ q.
    pub int_q: f64,
    /// ∫ₛ^∞∫ₜ^∞ q².
    pub int_int_q2: f64,
    /// s + 2q² - 2q'.
    pub v: f64,
}

/// All Painlevé data at `s`, memoized.
pub fn painleve_sample(s: f64) -> Result<PainleveSample> {
    static CACHE: OnceLock<Mutex<HashMap<u64, PainleveSample>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&s.to_bits()) {
        return Ok(*p);
    }
    let q = q_hm(s)?;
    let q_prime = q_prime(s)?;
    let p = PainleveSample {
        s,
        q,
        q_prime,
        int_q: int_q(s)?,
        int_int_q2: int_int_q2(s)?,
        v: s + 2.0 * q * q - 2.0 * q_prime,
    };
    cache.lock().expect("cache lock").insert(s.to_bits(), p);
    Ok(p)
}
