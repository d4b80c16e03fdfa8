use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::numcore::dd::Dd;

/// Scalar type used by the Nyström machinery.
///
/// Implemented for `f64` and for the double-double `Dd`; the latter is
/// only needed where `1 - λ_max` of the discretized operator drops below the
/// square root of machine epsilon.
pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Unit roundoff of the type, as an f64.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn from_pair(hi: f64, lo: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    /// Natural log of the absolute value, to f64 accuracy.
    fn ln_abs(self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_pair(hi: f64, lo: f64) -> Self {
        hi + lo
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn ln_abs(self) -> f64 {
        self.abs().ln()
    }
}

impl Real for Dd {
    const EPSILON: f64 = 4.93e-32;

    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn from_pair(hi: f64, lo: f64) -> Self {
        Dd::from_sum(hi, lo)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn ln_abs(self) -> f64 {
        self.hi.abs().ln() + (self.lo / self.hi).ln_1p()
    }
}
