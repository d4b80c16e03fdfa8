use crate::error::{Error, Result};
use crate::numcore::real::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    Finite {
        a: f64,
        b: f64,
    },
    /// `[origin, ∞)` reached through `x = origin + scale (1+t)/(1-t)`.
    SemiInfinite {
        origin: f64,
        scale: f64,
    },
}

#[derive(Clone, Debug)]
pub struct QuadRule<T = f64> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub domain: Domain,
}

impl<T: Real> QuadRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += *w * f(*x);
        }
        acc
    }

    pub fn to_f64(&self) -> QuadRule<f64> {
        QuadRule {
            nodes: self.nodes.iter().map(|x| x.to_f64()).collect(),
            weights: self.weights.iter().map(|w| w.to_f64()).collect(),
            domain: self.domain,
        }
    }
}

/// n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Result<QuadRule<f64>> {
    gauss_legendre_in::<f64>(n)
}

/// Gauss–Legendre rule computed in the scalar type `T`.
pub fn gauss_legendre_in<T: Real>(n: usize) -> Result<QuadRule<T>> {
    if !(1..=2048).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "gauss_legendre: n = {n} outside 1..=2048"
        )));
    }
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    let one = T::one();
    let two = T::from_f64(2.0);
    for i in 0..m {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut x = T::from_f64(guess);
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs().to_f64() <= 2.0 * T::EPSILON {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = two / ((one - x * x) * dp * dp);
        // Node i from the top is the largest; store ascending.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    Ok(QuadRule {
        nodes,
        weights,
        domain: Domain::Finite { a: -1.0, b: 1.0 },
    })
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let one = T::one();
    let mut p0 = one;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 =
            (T::from_f64(2.0 * kf - 1.0) * x * p1 - T::from_f64(kf - 1.0) * p0) / T::from_f64(kf);
        p0 = p1;
        p1 = p2;
    }
    let d = T::from_f64(n as f64) * (x * p1 - p0) / (x * x - one);
    (p1, d)
}

/// Affine transplant of a [-1, 1] rule to [a, b].
pub fn map_finite<T: Real>(rule: &QuadRule<T>, a: f64, b: f64) -> QuadRule<T> {
    let half = T::from_f64(0.5) * (T::from_f64(b) - T::from_f64(a));
    let mid = T::from_f64(0.5) * (T::from_f64(b) + T::from_f64(a));
    QuadRule {
        nodes: rule.nodes.iter().map(|t| mid + half * *t).collect(),
        weights: rule.weights.iter().map(|w| half * *w).collect(),
        domain: Domain::Finite { a, b },
    }
}

/// Rational transplant of a [-1, 1] rule to [origin, ∞).
pub fn map_semi_infinite<T: Real>(
    rule: &QuadRule<T>,
    origin: f64,
    scale: f64,
) -> Result<QuadRule<T>> {
    if !(scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "map_semi_infinite: scale must be positive, got {scale}"
        )));
    }
    let l = T::from_f64(scale);
    let o = T::from_f64(origin);
    let one = T::one();
    let two = T::from_f64(2.0);
    let mut nodes = Vec::with_capacity(rule.len());
    let mut weights = Vec::with_capacity(rule.len());
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        let den = one - *t;
        nodes.push(o + l * (one + *t) / den);
        weights.push(*w * two * l / (den * den));
    }
    Ok(QuadRule {
        nodes,
        weights,
        domain: Domain::SemiInfinite { origin, scale },
    })
}

/// Composite Gauss–Legendre over consecutive panels `breaks[i]..breaks[i+1]`.
pub fn composite(breaks: &[f64], per_panel: usize) -> Result<QuadRule<f64>> {
    let base = gauss_legendre(per_panel)?;
    let mut nodes = Vec::with_capacity(per_panel * breaks.len());
    let mut weights = Vec::with_capacity(per_panel * breaks.len());
    for pair in breaks.windows(2) {
        let r = map_finite(&base, pair[0], pair[1]);
        nodes.extend(r.nodes);
        weights.extend(r.weights);
    }
    let a = breaks.first().copied().unwrap_or(0.0);
    let b = breaks.last().copied().unwrap_or(0.0);
    Ok(QuadRule {
        nodes,
        weights,
        domain: Domain::Finite { a, b },
    })
}
