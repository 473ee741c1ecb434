//! Arakawa–Kaneko type zeta-functions attached to 2×2 complex matrices and
//! their poly-Bernoulli polynomials, computed exactly and numerically.

pub mod classical;
pub mod error;
pub mod exact;
pub mod gl2;
pub mod harness;
pub mod moebius;
pub mod numeric;

pub use error::{Error, Result};
