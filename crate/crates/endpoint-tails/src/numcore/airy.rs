//! Airy function Ai and its derivative on the real line.
//!
//! Inside [`TABLE_MIN`, `TABLE_MAX`] the function is a local Taylor expansion
//! about the nearest anchor of a grid with spacing 1/4. The anchor data are
//! produced once, in double-double arithmetic, by stepping the Airy equation
//! outward from exactly known values: leftward from Ai(0), Ai'(0) and
//! leftward from Ai(16), Ai'(16) for the positive half (stepping toward the
//! origin keeps the recessive solution stable). Outside the table the classical
//! asymptotic expansions take over.

use std::sync::OnceLock;

use crate::numcore::dd::Dd;

use crate::numcore::real::Real;

pub const TABLE_MIN: f64 = -20.0;
pub const TABLE_MAX: f64 = 16.0;
const SPACING: f64 = 0.25;
const NCOEF: usize = 34;

const AI0: (f64, f64) = (0.3550280538878172, 2.05233632436212e-17);
const AIP0: (f64, f64) = (-0.2588194037928068, 2.522243111610832e-17);
const AI16: (f64, f64) = (4.1568888289170244e-20, -1.4060507239173398e-37);
const AIP16: (f64, f64) = (-1.669188676838181e-19, -1.4144234163219478e-36);

/// Coefficients of the large-argument expansions of Ai and Ai'.
#[derive(Clone, Debug)]
pub struct AiryAsymCoeffs {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl AiryAsymCoeffs {
    pub fn new(n: usize) -> Self {
        let mut c = Vec::with_capacity(n);
        let mut d = Vec::with_capacity(n);
        c.push(1.0);
        d.push(1.0);
        for k in 1..n {
            let kf = k as f64;
            let ck = c[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / (216.0 * kf * (2.0 * kf - 1.0));
            c.push(ck);
            d.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * ck);
        }
        AiryAsymCoeffs { c, d }
    }

    pub fn shared() -> &'static AiryAsymCoeffs {
        static COEFFS: OnceLock<AiryAsymCoeffs> = OnceLock::new();
        COEFFS.get_or_init(|| AiryAsymCoeffs::new(40))
    }
}

/// Taylor data for Ai about the anchors `TABLE_MIN + k * SPACING`.
pub struct AnchorTable<T> {
    coeffs: Vec<[T; NCOEF]>,
}

fn taylor_coeffs<T: Real>(x0: T, y: T, yp: T) -> [T; NCOEF] {
    let mut a = [T::zero(); NCOEF];
    a[0] = y;
    a[1] = yp;
    a[2] = T::from_f64(0.5) * x0 * y;
    for k in 1..NCOEF - 2 {
        let den = ((k + 1) * (k + 2)) as f64;
        a[k + 2] = (x0 * a[k] + a[k - 1]) / T::from_f64(den);
    }
    a
}

fn eval_taylor<T: Real>(a: &[T; NCOEF], h: T) -> (T, T) {
    let mut p = a[NCOEF - 1];
    for k in (0..NCOEF - 1).rev() {
        p = p * h + a[k];
    }
    let mut dp = a[NCOEF - 1] * T::from_f64((NCOEF - 1) as f64);
    for k in (1..NCOEF - 1).rev() {
        dp = dp * h + a[k] * T::from_f64(k as f64);
    }
    (p, dp)
}

fn anchor_count() -> usize {
    ((TABLE_MAX - TABLE_MIN) / SPACING).round() as usize + 1
}

fn anchor_x(k: usize) -> f64 {
    TABLE_MIN + k as f64 * SPACING
}

fn build_table_dd() -> AnchorTable<Dd> {
    let n = anchor_count();
    let zero = [Dd::from_f64(0.0); NCOEF];
    let mut coeffs = vec![zero; n];
    let k0 = ((0.0 - TABLE_MIN) / SPACING).round() as usize;
    let step = Dd::from_f64(SPACING);

    let mut y = Dd::from_pair(AI0.0, AI0.1);
    let mut yp = Dd::from_pair(AIP0.0, AIP0.1);
    for k in (0..=k0).rev() {
        let a = taylor_coeffs(Dd::from_f64(anchor_x(k)), y, yp);
        coeffs[k] = a;
        let (ny, nyp) = eval_taylor(&a, -step);
        y = ny;
        yp = nyp;
    }

    let mut y = Dd::from_pair(AI16.0, AI16.1);
    let mut yp = Dd::from_pair(AIP16.0, AIP16.1);
    for k in ((k0 + 1)..n).rev() {
        let a = taylor_coeffs(Dd::from_f64(anchor_x(k)), y, yp);
        coeffs[k] = a;
        let (ny, nyp) = eval_taylor(&a, -step);
        y = ny;
        yp = nyp;
    }
    AnchorTable { coeffs }
}

fn table_dd() -> &'static AnchorTable<Dd> {
    static T: OnceLock<AnchorTable<Dd>> = OnceLock::new();
    T.get_or_init(build_table_dd)
}

fn table_f64() -> &'static AnchorTable<f64> {
    static T: OnceLock<AnchorTable<f64>> = OnceLock::new();
    T.get_or_init(|| AnchorTable {
        coeffs: table_dd()
            .coeffs
            .iter()
            .map(|a| {
                let mut b = [0.0; NCOEF];
                for (bi, ai) in b.iter_mut().zip(a) {
                    *bi = ai.to_f64();
                }
                b
            })
            .collect(),
    })
}

fn table_lookup<T: Real>(table: &AnchorTable<T>, x: T) -> (T, T) {
    let xf = x.to_f64();
    let k = ((xf - TABLE_MIN) / SPACING).round() as usize;
    let h = x - T::from_f64(anchor_x(k));
    eval_taylor(&table.coeffs[k], h)
}

/// Scalar types with an Airy evaluator.
pub trait AiryScalar: Real {
    /// (Ai(x), Ai'(x)).
    fn airy(x: Self) -> (Self, Self);
}

impl AiryScalar for f64 {
    fn airy(x: f64) -> (f64, f64) {
        airy_pair(x)
    }
}

impl AiryScalar for Dd {
    fn airy(x: Dd) -> (Dd, Dd) {
        let xf = x.to_f64();
        if (TABLE_MIN..=TABLE_MAX).contains(&xf) {
            table_lookup(table_dd(), x)
        } else {
            // Beyond the table the values are either below 1e-19 (right) or
            // never requested in extended precision (left).
            let (a, ap) = airy_pair(xf);
            (Dd::from_f64(a), Dd::from_f64(ap))
        }
    }
}

/// (Ai(x), Ai'(x)) in 64-bit arithmetic.
pub fn airy_pair(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if (TABLE_MIN..=TABLE_MAX).contains(&x) {
        return table_lookup(table_f64(), x);
    }
    if x > 0.0 {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        if zeta > 745.0 {
            return (0.0, -0.0);
        }
        let (a, ap) = scaled_positive_asym(x);
        let e = (-zeta).exp();
        (a * e, ap * e)
    } else {
        negative_asym(-x)
    }
}

pub fn airy_ai(x: f64) -> f64 {
    airy_pair(x).0
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy_pair(x).1
}

/// Exponentially scaled pair e^{ζ}(Ai(x), Ai'(x)) with ζ = (2/3)x^{3/2} for
/// x > 0; for x ≤ 0 no scaling is applied.
pub fn airy_scaled_pair(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return airy_pair(x);
    }
    if x <= TABLE_MAX {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let (a, ap) = table_lookup(table_f64(), x);
        let e = zeta.exp();
        (a * e, ap * e)
    } else {
        scaled_positive_asym(x)
    }
}

/// Scale exponent used by [`airy_scaled_pair`].
pub fn airy_scale_exponent(x: f64) -> f64 {
    if x > 0.0 {
        2.0 / 3.0 * x * x.sqrt()
    } else {
        0.0
    }
}

fn scaled_positive_asym(x: f64) -> (f64, f64) {
    let co = AiryAsymCoeffs::shared();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let inv = 1.0 / zeta;
    let (sa, sd) = alternating_sums(co, inv);
    let q = x.sqrt().sqrt();
    let pref = 0.5 / std::f64::consts::PI.sqrt();
    (pref * sa / q, -pref * q * sd)
}

fn alternating_sums(co: &AiryAsymCoeffs, inv: f64) -> (f64, f64) {
    let mut sa = 0.0;
    let mut sd = 0.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..co.c.len() {
        let tc = co.c[k] * pw;
        if tc.abs() > last || tc.abs() < 1e-18 * sa.abs().max(1e-300) {
            break;
        }
        last = tc.abs();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sa += sign * tc;
        sd += sign * co.d[k] * pw;
        pw *= inv;
    }
    (sa, sd)
}

fn negative_asym(x: f64) -> (f64, f64) {
    // x > 0 here; returns (Ai(-x), Ai'(-x)).
    let co = AiryAsymCoeffs::shared();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let inv = 1.0 / zeta;
    let (mut pc, mut qc, mut pd, mut qd) = (0.0, 0.0, 0.0, 0.0);
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..co.c.len() {
        let tc = co.c[k] * pw;
        if tc.abs() > last || tc.abs() < 1e-18 {
            break;
        }
        last = tc.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pc += sign * tc;
            pd += sign * co.d[k] * pw;
        } else {
            qc += sign * tc;
            qd += sign * co.d[k] * pw;
        }
        pw *= inv;
    }
    let theta = zeta + std::f64::consts::FRAC_PI_4;
    let (s, c) = theta.sin_cos();
    let q = x.sqrt().sqrt();
    let rpi = 1.0 / std::f64::consts::PI.sqrt();
    let ai = rpi / q * (s * pc - c * qc);
    let aip = -rpi * q * (c * pd + s * qd);
    (ai, aip)
}
