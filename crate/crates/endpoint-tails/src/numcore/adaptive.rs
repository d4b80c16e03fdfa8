//! Globally adaptive Gauss–Kronrod (10/21) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[10];
    let mut rabs = rk.abs();
    let mut rg = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        rk += WGK[j] * (f1 + f2);
        rabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            rg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * rk;
    let mut rasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        rasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = rk * h;
    let rabs = rabs * h.abs();
    let rasc = rasc * h.abs();
    let mut error = ((rk - rg) * h).abs();
    if rasc != 0.0 && error != 0.0 {
        error = rasc * (200.0 * error / rasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * rabs;
    if rabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Piece { a, b, value, error }
}

/// Integrate `f` over `[a, b]`; either end may be infinite. The result is
/// accepted once the estimated error is at most `tol`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let opts = AdaptiveOptions {
        abs_tol: tol,
        rel_tol: 0.0,
        ..AdaptiveOptions::default()
    };
    integrate_adaptive_with(f, a, b, opts).map(|r| r.value)
}

pub fn integrate_adaptive_with<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: AdaptiveOptions,
) -> Result<Integral> {
    if opts.abs_tol < 1e-13 && opts.rel_tol < 1e-13 {
        return Err(Error::InvalidArgument(format!(
            "integrate_adaptive: tolerance {:e} below 1e-13",
            opts.abs_tol.max(opts.rel_tol)
        )));
    }
    if a.is_nan() || b.is_nan() {
        return Err(Error::InvalidArgument(
            "integrate_adaptive: NaN limit".into(),
        ));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if a > b {
        return integrate_adaptive_with(f, b, a, opts).map(|r| Integral {
            value: -r.value,
            error: r.error,
        });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => run(&mut f, a, b, opts),
        (true, false) => run(
            &mut |t: f64| {
                let u = 1.0 - t;
                f(a + t / u) / (u * u)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, true) => run(
            &mut |t: f64| {
                let u = 1.0 - t;
                f(b - t / u) / (u * u)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, false) => run(
            &mut |t: f64| {
                let u = 1.0 - t * t;
                f(t / u) * (1.0 + t * t) / (u * u)
            },
            -1.0,
            1.0,
            opts,
        ),
    }
}

fn run<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, opts: AdaptiveOptions) -> Result<Integral> {
    // Endpoints of mapped ranges are never sampled by the open Kronrod rule,
    // but the map can still produce inf*0; treat non-finite samples as zero.
    let mut g = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut heap = BinaryHeap::new();
    let first = gk21(&mut g, a, b);
    let mut total = first.value;
    let mut err = first.error;
    heap.push(first);
    let mut count = 1;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if err <= target {
            return Ok(Integral {
                value: total,
                error: err,
            });
        }
        if count >= opts.max_intervals {
            return Err(Error::NonConvergence {
                what: format!("adaptive quadrature on [{a}, {b}]"),
                estimate: err,
                tol: target,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::NonConvergence {
                what: format!("adaptive quadrature interval collapsed near {mid}"),
                estimate: err,
                tol: target,
            });
        }
        let left = gk21(&mut g, worst.a, mid);
        let right = gk21(&mut g, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        count += 1;
        if count % 64 == 0 {
            // Refresh the running sums to shed accumulated cancellation.
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
        }
    }
}
