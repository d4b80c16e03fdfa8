use std::f64::consts::PI;

/// ζ'(-1), the derivative of the Riemann zeta function at -1.
#[allow(clippy::excessive_precision)]
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_929_213_919_660_243;

/// Glaisher–Kinkelin constant A; ζ'(-1) = 1/12 - ln A.
#[allow(clippy::excessive_precision)]
pub const GLAISHER: f64 = 1.282_427_129_100_622_636_875_342_568_869_791;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub zeta_prime_m1: f64,
    /// Prefactor of the GOE left tail.
    pub tau1: f64,
    /// Prefactor of the endpoint density tail.
    pub tau: f64,
    /// Prefactor of the w-scaled density tail.
    pub kappa: f64,
    /// Prefactor of the |T| tail probability.
    pub c: f64,
}

pub fn constants() -> Constants {
    let z = ZETA_PRIME_MINUS_ONE;
    let common = PI.powf(1.5) * (0.5 * z).exp() * 1.25f64.exp();
    let tau = 2f64.powf(-29.0 / 6.0) * common;
    Constants {
        zeta_prime_m1: z,
        tau1: (0.5 * z).exp() / 2f64.powf(11.0 / 48.0),
        tau,
        kappa: 2f64.powf(-91.0 / 24.0) * common,
        c: tau / 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glaisher_route() {
        let z = 1.0 / 12.0 - GLAISHER.ln();
        assert!((z - ZETA_PRIME_MINUS_ONE).abs() < 1e-15);
    }

    #[test]
    fn values() {
        // Reference digits from a 30-digit evaluation of the defining formulas.
        let k = constants();
        assert!((k.tau1 - 0.785_404_190_991_725_668).abs() < 1e-15);
        assert!((k.tau - 0.627_615_779_531_409_745).abs() < 1e-15);
        assert!((k.kappa - 1.292_012_651_248_857_668).abs() < 1e-14);
        assert_eq!(k.c, k.tau / 2.0);
    }
}
