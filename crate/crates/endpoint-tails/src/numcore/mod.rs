pub mod adaptive;
pub mod airy;
pub mod constants;
pub mod dd;
pub mod diff;
pub mod laplace;
pub mod linalg;
pub mod quad;
pub mod real;

pub use adaptive::{integrate_adaptive, integrate_adaptive_with, AdaptiveOptions};
pub use airy::{
    airy_ai, airy_ai_prime, airy_pair, airy_scale_exponent, airy_scaled_pair, AiryAsymCoeffs,
    AiryScalar,
};
pub use constants::{constants, Constants};
pub use laplace::{laplace_boundary, laplace_interior, AsymptoticEval};
pub use quad::{gauss_legendre, map_finite, map_semi_infinite, Domain, QuadRule};
pub use real::Real;
