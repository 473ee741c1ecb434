//! Double-exponential quadrature: tanh-sinh on `[a, b]` and exp-sinh on
//! `[a, ∞)`, with level doubling and a difference-of-levels error estimate.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest abscissa kept by the exp-sinh rule.
const X_MAX: f64 = 1.0e6;

/// Change of variables `x = φ(t)` for a DE rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeMap {
    TanhSinh { a: f64, b: f64 },
    ExpSinh { a: f64 },
}

impl DeMap {
    fn t_range(&self) -> (f64, f64) {
        match self {
            DeMap::TanhSinh { .. } => (-6.5, 6.5),
            // e^{π/2 sinh t} spans roughly 1e−300 ..= X_MAX.
            DeMap::ExpSinh { .. } => (-6.7, ((X_MAX.ln()) / FRAC_PI_2).asinh()),
        }
    }

    /// Abscissa and weight `φ'(t)` at `t`; `None` if the node collapses
    /// onto an endpoint in floating point.
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let du = FRAC_PI_2 * t.cosh();
        match *self {
            DeMap::TanhSinh { a, b } => {
                let half = 0.5 * (b - a);
                let e = (-2.0 * u.abs()).exp();
                // Distance from the nearer endpoint, in units of `half`.
                let gap = 2.0 * e / (1.0 + e);
                let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
                let x = if u < 0.0 { a + half * gap } else { b - half * gap };
                let w = half * du * sech2;
                (x > a && x < b && w > 0.0).then_some((x, w))
            }
            DeMap::ExpSinh { a } => {
                let e = u.exp();
                let x = a + e;
                (x > a && e.is_finite() && e > 0.0).then_some((x, du * e))
            }
        }
    }

    /// All nodes of level `level` (step `2^{−level}`), tagged with whether
    /// they also belong to level `level − 1`.
    pub fn nodes(&self, level: u32) -> Vec<(f64, f64, bool)> {
        let h = 0.5f64.powi(level as i32);
        let (lo, hi) = self.t_range();
        let (jlo, jhi) = ((lo / h).ceil() as i64, (hi / h).floor() as i64);
        (jlo..=jhi)
            .filter_map(|j| {
                self.node(j as f64 * h).map(|(x, w)| (x, w * h, j % 2 == 0))
            })
            .collect()
    }
}

/// Target accuracy of one quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_level: u32,
}

/// Integral value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Level-difference estimate plus the propagated integrand error and a
    /// rounding floor proportional to `∫ |f|`.
    pub error: f64,
    pub abs_integral: f64,
}

/// Integrates `f` over the map's interval. The integrand returns its value
/// and an absolute error bound.
pub fn integrate<F>(map: DeMap, tol: Tolerance, mut f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let (lo, hi) = map.t_range();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut err_sum = 0.0;
    let mut estimate = Complex64::new(0.0, 0.0);
    let mut diff = f64::INFINITY;
    let mut h = 1.0;
    for level in 0..=tol.max_level {
        h = 0.5f64.powi(level as i32);
        let (jlo, jhi) = ((lo / h).ceil() as i64, (hi / h).floor() as i64);
        for j in jlo..=jhi {
            if level > 0 && j % 2 == 0 {
                continue;
            }
            let Some((x, w)) = map.node(j as f64 * h) else { continue };
            let (v, e) = f(x)?;
            let term = v * w;
            if !term.re.is_finite() || !term.im.is_finite() {
                if w < 1e-250 {
                    continue;
                }
                return Err(Error::Quadrature(format!("non-finite integrand at x = {x:e}")));
            }
            sum += term;
            abs_sum += term.norm();
            err_sum += e * w;
        }
        let next = sum * h;
        if level > 0 {
            diff = (next - estimate).norm();
        }
        estimate = next;
        if level >= 3 && diff <= tol.abs.max(tol.rel * estimate.norm()) {
            break;
        }
    }
    let abs_integral = abs_sum * h;
    let error = diff + err_sum * h + 4.0 * f64::EPSILON * abs_integral;
    Ok(QuadResult { value: estimate, error, abs_integral })
}

/// `∫_a^b f` for a plain real integrand, used in tests and small helpers.
pub fn integrate_real(map: DeMap, tol: Tolerance, f: impl Fn(f64) -> f64) -> Result<QuadResult> {
    integrate(map, tol, |x| Ok((Complex64::new(f(x), 0.0), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: Tolerance = Tolerance { abs: 1e-15, rel: 1e-14, max_level: 10 };

    #[test]
    fn endpoint_singularities() {
        // ∫_0^1 x^{−1/2} = 2, ∫_0^1 ln x = −1.
        let r = integrate_real(DeMap::TanhSinh { a: 0.0, b: 1.0 }, TOL, |x| x.powf(-0.5)).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-13, "{r:?}");
        let r = integrate_real(DeMap::TanhSinh { a: 0.0, b: 1.0 }, TOL, f64::ln).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-13);
        // Strong singularity x^{−0.95}: exact value 20.
        let r = integrate_real(DeMap::TanhSinh { a: 0.0, b: 1.0 }, TOL, |x| x.powf(-0.95)).unwrap();
        assert!((r.value.re - 20.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn half_line() {
        // ∫_0^∞ x^{1/2} e^{−x} = Γ(3/2) = √π/2, ∫_0^∞ 1/(1+x²) = π/2.
        let r = integrate_real(DeMap::ExpSinh { a: 0.0 }, TOL, |x| x.sqrt() * (-x).exp()).unwrap();
        assert!((r.value.re - PI.sqrt() / 2.0).abs() < 1e-13);
        let r = integrate_real(DeMap::ExpSinh { a: 0.0 }, TOL, |x| 1.0 / (1.0 + x * x)).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 2e-6, "{r:?}");
    }

    #[test]
    fn complex_integrand_and_error_estimate() {
        // ∫_0^∞ e^{−(1+i)x} = (1 − i)/2.
        let r = integrate(DeMap::ExpSinh { a: 0.0 }, TOL, |x| {
            Ok(((-Complex64::new(1.0, 1.0) * x).exp(), 0.0))
        })
        .unwrap();
        let exact = Complex64::new(0.5, -0.5);
        assert!((r.value - exact).norm() < 1e-14);
        assert!((r.value - exact).norm() <= r.error.max(1e-16));
    }

    #[test]
    fn node_tags_split_levels() {
        let map = DeMap::ExpSinh { a: 0.0 };
        let fine = map.nodes(5);
        let coarse = map.nodes(4);
        assert_eq!(fine.iter().filter(|n| n.2).count(), coarse.len());
    }
}
