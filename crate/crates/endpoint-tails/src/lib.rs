//! Numerics for the endpoint of the directed polymer: the GOE Tracy–Widom
//! distribution, the Hastings–McLeod solution, the kernel function h(s, w),
//! the joint and marginal endpoint densities, their tail asymptotics, and
//! Dotsenko's formula for the endpoint distribution.

pub mod asymptotics;
pub mod density;
pub mod dotsenko;
pub mod error;
pub mod fredholm;
pub mod hfun;
pub mod lax;
pub mod numcore;
pub mod painleve;

pub use error::{Error, Result};
