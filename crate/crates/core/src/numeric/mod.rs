//! Floating-point evaluation: Γ, double-exponential quadrature, the Lerch
//! transcendent and the zeta-functions `ξ_D`, `ξ_N` on their domains.

mod gamma;
mod lerch;
mod quad;
mod riemann;
mod zeta;

use serde::Serialize;

pub use gamma::{gamma, recip_gamma};
pub use lerch::{cpow, lerch_phi, Lerch};
pub use quad::{integrate, integrate_real, DeMap, QuadResult, Tolerance};
pub use riemann::riemann_zeta_real;
pub use zeta::{
    difference_residual, duality_residual, singular_radius, xi_d, xi_d_at_neg_int, xi_d_hankel,
    xi_d_numeric, xi_n_numeric, RelationCheck, ZetaMethod,
};

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Rational,
    Integral,
    Hankel,
    Circle,
}

/// A complex value with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexEval {
    #[serde(serialize_with = "ser_complex")]
    pub value: num_complex::Complex64,
    pub est_error: f64,
    pub method: Method,
}

pub(crate) fn ser_complex<S: serde::Serializer>(z: &num_complex::Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Accuracy settings for the zeta-function evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Number of step halvings allowed in the outer DE rule.
    pub max_subdivisions: u32,
    /// Radius of the Hankel/circle contour; `None` picks a quarter of the
    /// distance to the nearest singularity.
    pub hankel_radius: Option<f64>,
    pub circle_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-11, max_subdivisions: 9, hankel_radius: None, circle_nodes: 64 }
    }
}

impl QuadratureConfig {
    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance { abs: self.abs_tol, rel: self.rel_tol, max_level: self.max_subdivisions }
    }
}

/// `a / b` by Smith's method, which avoids the overflow and underflow of
/// `|b|²` in the textbook formula.
pub(crate) fn cdiv(a: num_complex::Complex64, b: num_complex::Complex64) -> num_complex::Complex64 {
    use num_complex::Complex64;
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}
