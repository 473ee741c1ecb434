use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::recip_gamma;
use super::lerch::{assert_phase_closure, continued_power, cpow, Lerch};
use super::quad::{integrate, DeMap, QuadResult};
use super::{cdiv, ser_complex, ComplexEval, Method, QuadratureConfig};
use crate::error::{Error, Result};
use crate::moebius::{domain_report, ComplexMatrix, Matrix2, Params};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);
/// Upper bound on the automatically chosen contour radius.
const MAX_RADIUS: f64 = 0.5;

/// Evaluation route for `ξ_D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    Auto,
    Integral,
    Hankel,
    Circle,
}

/// `f(t) = e^{−wt} Φ(g e^t, u, y) / j_D(g, e^t)` with its error bound.
///
/// Written in terms of `E = e^{−t}` so that large `Re t` neither overflows
/// nor loses the pole structure: `g e^t = (a + bE)/(c + dE)` and
/// `1/j_D = E/(c + dE)`.
struct Integrand<'a> {
    g: ComplexMatrix,
    w: Complex64,
    phi: &'a Lerch,
    /// Use `j_N` in place of `j_D` and subtract `y^{−u}` from `Φ`; holds
    /// `(y^{−u}, (y+1)^{−u})`, the second being the limit at `j_N = 0`.
    numerator_form: Option<(Complex64, Complex64)>,
    /// `log|t^{s−1} f(t)|` is below `−rate·Re t + poly·ln|t|` for large `t`.
    tail_rate: f64,
    tail_poly: f64,
}

impl<'a> Integrand<'a> {
    /// Decay at `t → ∞`: `e^{−(w+1)t}` from `1/j_D` when `c ≠ 0`; when
    /// `c = 0`, `1/j_D` is constant and `|Φ(z)| ~ |z|^{−min(Re y, 1)}`.
    fn new(g: &Matrix2, p: &Params, phi: &'a Lerch, numerator_form: Option<(Complex64, Complex64)>) -> Self {
        let gc = g.to_complex();
        let y = if numerator_form.is_some() { p.y + 1.0 } else { p.y };
        let tail_rate = if gc.c == ZERO { p.w.re + y.re.min(1.0) } else { p.w.re + 1.0 };
        let tail_poly = p.s.norm() + p.u.norm() + 4.0;
        Self { g: gc, w: p.w, phi, numerator_form, tail_rate, tail_poly }
    }

    fn eval(&self, t: Complex64) -> Result<(Complex64, f64)> {
        if t.re > 64.0 {
            let log_bound = -self.tail_rate * t.re + self.tail_poly * t.norm().ln();
            if log_bound < -120.0 {
                return Ok((ZERO, 0.0));
            }
            if t.re > 700.0 {
                return Err(Error::Quadrature(format!(
                    "tail decays too slowly (rate {:.3}) to truncate before e^(-t) underflows",
                    self.tail_rate
                )));
            }
        }
        let e = (-t).exp();
        // e^{−wt}·e^{−t} in one exponential so that neither factor overflows.
        let ewt_e = (-(self.w + 1.0) * t).exp();
        let g = &self.g;
        // p + q·e^{−t}, written as (p + q) + q·(e^{−t} − 1) near t = 0 where
        // j_D or j_N may vanish.
        let lin = |p: Complex64, q: Complex64| if t.norm() < 0.5 { (p + q) + q * cexpm1(-t) } else { p + q * e };
        let den = lin(g.c, g.d);
        if den == ZERO {
            return Err(Error::Pole(format!("j_D(g, e^t) = 0 at t = {t}")));
        }
        let num = lin(g.a, g.b);
        let z = cdiv(num, den);
        if !z.is_finite() && t.norm() < 1e-250 {
            // Only reachable at a simple zero of j_D at t = 0, where f grows
            // polynomially and the t^{s−1} dt measure makes this node's
            // weight vanish.
            return Ok((ZERO, 0.0));
        }
        let delta = cdiv(lin(g.c - g.a, g.d - g.b), den);
        match self.numerator_form {
            None => {
                let phi = self.phi.eval_with_complement(z, delta)?;
                let s = cdiv(ewt_e, den);
                Ok((phi.value * s, phi.est_error * s.norm()))
            }
            Some((y_pow, y1_pow)) => {
                let s = cdiv(ewt_e, den);
                if num == ZERO {
                    return Ok((y1_pow * s, 0.0));
                }
                let phi = self.phi.eval_with_complement(z, delta)?;
                // (Φ − y^{−u}) / z, with the cancellation in the difference
                // folded into the error.
                let q = cdiv(s, z);
                let err = (phi.est_error + 4.0 * f64::EPSILON * y_pow.norm()) * q.norm();
                Ok(((phi.value - y_pow) * q, err))
            }
        }
    }
}

/// `e^z − 1` without cancellation for small `z`.
fn cexpm1(z: Complex64) -> Complex64 {
    let (sin, cos) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * cos - 2.0 * half * half, z.re.exp() * sin)
}

fn is_nonpositive_integer(s: Complex64) -> Option<usize> {
    (s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()).then(|| (-s.re) as usize)
}

fn is_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re == s.re.round()
}

fn check_domain(g: &Matrix2, p: &Params) -> Result<()> {
    if domain_report(g)?.admits(p) {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!(
            "(u, s, y, w) = ({}, {}, {}, {}) is outside the certified region of {g}",
            p.u, p.s, p.y, p.w
        )))
    }
}

/// `(1/Γ(s)) ∫_0^∞ t^{s−1} f(t) dt`, split at `t = 1`.
fn mellin_direct(
    s: Complex64,
    cfg: &QuadratureConfig,
    f: impl Fn(Complex64) -> Result<(Complex64, f64)>,
) -> Result<ComplexEval> {
    let tol = cfg.tolerance();
    let body = |t: f64| {
        let (v, e) = f(Complex64::new(t, 0.0))?;
        let p = ((s - 1.0) * t.ln()).exp();
        Ok((v * p, e * p.norm()))
    };
    let head = integrate(DeMap::TanhSinh { a: 0.0, b: 1.0 }, tol, body)?;
    let tail = integrate(DeMap::ExpSinh { a: 1.0 }, tol, body)?;
    let rg = recip_gamma(s);
    Ok(ComplexEval {
        value: rg * (head.value + tail.value),
        est_error: rg.norm() * (head.error + tail.error),
        method: Method::Integral,
    })
}

/// `(1/Γ(s)) [∫_ε^∞ t^{s−1} f + (e^{2πis} − 1)^{−1} ∮_{|t|=ε} t^{s−1} f]`,
/// the Hankel continuation for `s ∉ ℤ`.
fn mellin_hankel(
    s: Complex64,
    eps: f64,
    cfg: &QuadratureConfig,
    f: impl Fn(Complex64) -> Result<(Complex64, f64)>,
) -> Result<ComplexEval> {
    assert_phase_closure(eps, s)?;
    let tol = cfg.tolerance();
    let ray: QuadResult = integrate(DeMap::ExpSinh { a: eps }, tol, |t| {
        let (v, e) = f(Complex64::new(t, 0.0))?;
        let p = ((s - 1.0) * t.ln()).exp();
        Ok((v * p, e * p.norm()))
    })?;
    let circle = integrate(DeMap::TanhSinh { a: 0.0, b: 2.0 * PI }, tol, |theta| {
        let t = Complex64::from_polar(eps, theta);
        let (v, e) = f(t)?;
        let k = continued_power(eps, s, theta) * Complex64::new(0.0, 1.0) * t;
        Ok((v * k, e * k.norm()))
    })?;
    let factor = 1.0 / ((s * TWO_PI_I).exp() - 1.0);
    let rg = recip_gamma(s);
    Ok(ComplexEval {
        value: rg * (ray.value + circle.value * factor),
        est_error: rg.norm() * (ray.error + circle.error * factor.norm()),
        method: Method::Hankel,
    })
}

/// Distance from `t = 0` to the nearest singularity of
/// `t ↦ Φ(g e^t, u, y) / j_D(g, e^t)`: zeros of `j_D`, and the preimage of
/// `z = 1` (for `u ∈ ℤ_{≤0}`) or of the whole cut `[1, ∞]` (otherwise).
pub fn singular_radius(g: &Matrix2, u: Complex64) -> f64 {
    let m = g.to_complex();
    let log_dist = |zeta: Complex64| -> f64 {
        if !(zeta.norm() > 0.0 && zeta.norm().is_finite()) {
            return f64::INFINITY;
        }
        let l = zeta.ln();
        (-1..=1).map(|k| (l + TWO_PI_I * k as f64).norm()).fold(f64::INFINITY, f64::min)
    };
    let mut best = 2.0 * PI;
    if m.c != ZERO {
        best = best.min(log_dist(-m.d / m.c));
    }
    // g^{−1}(1/σ) = (d − bσ)/(aσ − c) for σ ∈ [0, 1].
    let pre = |sigma: f64| (m.d - m.b * sigma) / (m.a * sigma - m.c);
    if is_nonpositive_integer(u).is_some() {
        best = best.min(log_dist(pre(1.0)));
    } else {
        const SAMPLES: usize = 4000;
        for i in 0..=SAMPLES {
            best = best.min(log_dist(pre(i as f64 / SAMPLES as f64)));
        }
    }
    best
}

fn contour_radius(g: &Matrix2, u: Complex64, cfg: &QuadratureConfig) -> Result<f64> {
    if let Some(r) = cfg.hankel_radius {
        return Ok(r);
    }
    let r = (0.25 * singular_radius(g, u)).min(MAX_RADIUS);
    if r < 1e-8 {
        return Err(Error::OutsideDomain(format!(
            "singularity of the integrand at t = 0 for {g}; no contour radius available"
        )));
    }
    Ok(r)
}

fn g_one_checks(g: &Matrix2) -> Result<()> {
    if g.fixes_one() {
        return Err(Error::DegenerateAtOne);
    }
    if (&g.c + &g.d) == 0.into() {
        return Err(Error::Unsupported("contour forms need g1 != inf".into()));
    }
    Ok(())
}

/// `ξ_D(u,s;y,w;g)` from its defining integral; needs `p` inside the
/// certified region of `g` (which forces `Re s > 0`).
pub fn xi_d_numeric(g: &Matrix2, p: Params, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    check_domain(g, &p)?;
    let phi = Lerch::new(p.u, p.y)?;
    let f = Integrand::new(g, &p, &phi, None);
    mellin_direct(p.s, cfg, |t| f.eval(t))
}

/// `ξ_N(u,s;y,w;g)` from its own integral with `j_N` and `Φ − y^{−u}`.
pub fn xi_n_numeric(g: &Matrix2, p: Params, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    check_domain(g, &Params { y: p.y + 1.0, ..p })?;
    let phi = Lerch::new(p.u, p.y)?;
    let pows = (cpow(p.y, -p.u), cpow(p.y + 1.0, -p.u));
    let f = Integrand::new(g, &p, &phi, Some(pows));
    mellin_direct(p.s, cfg, |t| f.eval(t))
}

/// `ξ_D` by the Hankel contour, valid for every `s ∉ ℤ` when `g1 ∉ {1, ∞}`
/// and `(u, y, w)` satisfy the half-plane conditions.
pub fn xi_d_hankel(g: &Matrix2, p: Params, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    if is_integer(p.s) {
        return Err(Error::InvalidArgument("integer s: use the circle route".into()));
    }
    g_one_checks(g)?;
    check_domain(g, &Params { s: Complex64::new(1e6, 0.0), ..p })?;
    let eps = contour_radius(g, p.u, cfg)?;
    let phi = Lerch::new(p.u, p.y)?;
    let f = Integrand::new(g, &p, &phi, None);
    mellin_hankel(p.s, eps, cfg, |t| f.eval(t))
}

/// `ξ_D(u, −m; y, w; g) = (−1)^m m! [t^m] f(t)`, with the coefficient taken
/// by the trapezoidal rule on `|t| = ε`.
pub fn xi_d_at_neg_int(
    g: &Matrix2,
    u: Complex64,
    m: usize,
    y: Complex64,
    w: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComplexEval> {
    g_one_checks(g)?;
    let eps = contour_radius(g, u, cfg)?;
    let phi = Lerch::new(u, y)?;
    let f = Integrand::new(g, &Params::new(u, Complex64::new(-(m as f64), 0.0), y, w), &phi, None);
    let n = cfg.circle_nodes.max(8) & !1;
    let mut full = ZERO;
    let mut half = ZERO;
    let mut abs = 0.0;
    let mut err = 0.0;
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let t = Complex64::from_polar(eps, theta);
        let (v, e) = f.eval(t)?;
        let term = v * Complex64::from_polar(eps.powi(-(m as i32)), -(m as f64) * theta);
        full += term;
        abs += term.norm();
        err += e * eps.powi(-(m as i32));
        if j % 2 == 0 {
            half += term;
        }
    }
    let coeff = full / n as f64;
    let coarse = half / (n / 2) as f64;
    let scale = (1..=m).map(|k| k as f64).product::<f64>();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(ComplexEval {
        value: coeff * scale * sign,
        est_error: scale * ((coeff - coarse).norm() + err / n as f64 + 8.0 * f64::EPSILON * abs / n as f64),
        method: Method::Circle,
    })
}

/// `ξ_D` by the requested route; `Auto` picks the circle at nonpositive
/// integers, the direct integral inside the certified region and the Hankel
/// contour elsewhere.
pub fn xi_d(g: &Matrix2, p: Params, method: ZetaMethod, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    match method {
        ZetaMethod::Integral => xi_d_numeric(g, p, cfg),
        ZetaMethod::Hankel => xi_d_hankel(g, p, cfg),
        ZetaMethod::Circle => match is_nonpositive_integer(p.s) {
            Some(m) => xi_d_at_neg_int(g, p.u, m, p.y, p.w, cfg),
            None => Err(Error::InvalidArgument("the circle route needs s in {0, -1, -2, ...}".into())),
        },
        ZetaMethod::Auto => {
            if let Some(m) = is_nonpositive_integer(p.s) {
                xi_d_at_neg_int(g, p.u, m, p.y, p.w, cfg)
            } else if p.s.re > 0.0 && domain_report(g)?.admits(&p) {
                xi_d_numeric(g, p, cfg)
            } else {
                xi_d_hankel(g, p, cfg)
            }
        }
    }
}

/// Both sides of a functional relation and their difference.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    #[serde(serialize_with = "ser_complex")]
    pub lhs: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub rhs: Complex64,
    pub residual: f64,
    pub est_error: f64,
}


/// `Σ k·x` with its error, including rounding in the sum itself.
fn weighted(terms: &[(Complex64, Option<ComplexEval>)]) -> (Complex64, f64) {
    terms.iter().fold((ZERO, 0.0), |(v, e), (k, x)| match x {
        Some(x) => {
            let t = k * x.value;
            (v + t, e + k.norm() * x.est_error + 4.0 * f64::EPSILON * t.norm())
        }
        None => (v, e),
    })
}

/// Difference relation
/// `a ξ_D(y+1, w−1) + b ξ_D(y+1, w) = c ξ_D(y, w−1) + d ξ_D(y, w) − y^{−u} w^{−s}`.
pub fn difference_residual(
    g: &Matrix2,
    p: Params,
    method: ZetaMethod,
    cfg: &QuadratureConfig,
) -> Result<RelationCheck> {
    let m = g.to_complex();
    let eval = |k: Complex64, q: Params| -> Result<(Complex64, Option<ComplexEval>)> {
        Ok((k, if k == ZERO { None } else { Some(xi_d(g, q, method, cfg)?) }))
    };
    let (y1, w1) = (p.y + 1.0, p.w - 1.0);
    let (lhs, lhs_err) = weighted(&[
        eval(m.a, Params { y: y1, w: w1, ..p })?,
        eval(m.b, Params { y: y1, ..p })?,
    ]);
    let (rhs0, rhs_err) = weighted(&[eval(m.c, Params { w: w1, ..p })?, eval(m.d, p)?]);
    let correction = cpow(p.y, -p.u) * cpow(p.w, -p.s);
    let rhs = rhs0 - correction;
    let rounding = 4.0 * f64::EPSILON * (correction.norm() + lhs.norm() + rhs.norm());
    Ok(RelationCheck { lhs, rhs, residual: (lhs - rhs).norm(), est_error: lhs_err + rhs_err + rounding })
}

/// Duality `ξ_D(u,s;y,w−1;g) = −(1/det g) ξ_D(s,u;w,y−1;g^{−1})`.
pub fn duality_residual(
    g: &Matrix2,
    p: Params,
    method: ZetaMethod,
    cfg: &QuadratureConfig,
) -> Result<RelationCheck> {
    let l = xi_d(g, Params { w: p.w - 1.0, ..p }, method, cfg)?;
    let r = xi_d(&g.inverse(), Params::new(p.s, p.u, p.w, p.y - 1.0), method, cfg)?;
    let k = -1.0 / g.to_complex().det();
    let rhs = k * r.value;
    Ok(RelationCheck {
        lhs: l.value,
        rhs,
        residual: (l.value - rhs).norm(),
        est_error: l.est_error + k.norm() * r.est_error + 4.0 * f64::EPSILON * (l.value.norm() + rhs.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;
    use crate::numeric::riemann_zeta_real;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn xi_one_two_is_twice_zeta_three() {
        let v = xi_d_numeric(&Matrix2::xi(), Params::real(1.0, 2.0, 1.0, 0.0), &cfg()).unwrap();
        let target = 2.0 * riemann_zeta_real(3.0).unwrap();
        assert!((v.value - c(target)).norm() < 1e-10, "{v:?}");
        assert!(v.est_error < 1e-8);
    }

    #[test]
    fn eta_is_symmetric() {
        let a = xi_d_numeric(&Matrix2::eta(), Params::real(1.5, 2.5, 1.0, 0.0), &cfg()).unwrap();
        let b = xi_d_numeric(&Matrix2::eta(), Params::real(2.5, 1.5, 1.0, 0.0), &cfg()).unwrap();
        // mpmath, 25 digits.
        let reference = c(4.223_039_231_691_000_9);
        assert!((a.value - reference).norm() < 1e-12, "{a:?}");
        assert!((b.value - reference).norm() < 1e-12, "{b:?}");
    }

    #[test]
    fn numerator_form_matches_shift() {
        let p = Params::real(1.7, 2.2, 0.6, 0.4);
        for g in [Matrix2::eta(), Matrix2::xi()] {
            let n = xi_n_numeric(&g, p, &cfg()).unwrap();
            let d = xi_d_numeric(&g, Params { y: p.y + 1.0, ..p }, &cfg()).unwrap();
            assert!((n.value - d.value).norm() < 1e-9, "{n:?} {d:?}");
        }
    }

    #[test]
    fn hankel_agrees_with_integral() {
        let p = Params::new(c(2.0), c(2.5), c(1.2), c(0.3));
        let a = xi_d_numeric(&Matrix2::xi(), p, &cfg()).unwrap();
        let b = xi_d_hankel(&Matrix2::xi(), p, &cfg()).unwrap();
        assert!((a.value - b.value).norm() < 1e-9, "{a:?} {b:?}");
    }

    #[test]
    fn hankel_is_stable_under_radius_change() {
        let p = Params::new(c(2.0), c(-0.5), c(1.0), c(0.0));
        let base = xi_d_hankel(&Matrix2::eta(), p, &cfg()).unwrap();
        let mut half = cfg();
        half.hankel_radius = Some(0.5 * contour_radius(&Matrix2::eta(), p.u, &cfg()).unwrap());
        let other = xi_d_hankel(&Matrix2::eta(), p, &half).unwrap();
        assert!(base.value.norm().is_finite());
        assert!((base.value - other.value).norm() < 1e-9, "{base:?} {other:?}");
    }

    #[test]
    fn circle_reproduces_exact_values() {
        let one = c(1.0);
        let g3 = Matrix2::alpha(GaussianRational::from_int(3));
        let v = xi_d_at_neg_int(&g3, c(-3.0), 2, one, c(0.0), &cfg()).unwrap();
        assert!((v.value - c(242.0)).norm() < 1e-9 * 242.0, "{v:?}");
        // η(2; −3) = B_3^(2) = −1/4... from the exact series.
        let b = crate::classical::poly_bernoulli_b(3, 2);
        let v = xi_d_at_neg_int(&Matrix2::eta(), c(2.0), 3, one, c(0.0), &cfg()).unwrap();
        let exact = crate::exact::rational_to_f64(&b[3]);
        assert!((v.value - c(exact)).norm() < 1e-10, "{v:?} vs {exact}");
    }

    #[test]
    fn relations_hold_at_a_point() {
        let p = Params::new(c(2.0), c(1.5), c(1.3), c(0.8));
        let r = difference_residual(&Matrix2::xi(), p, ZetaMethod::Auto, &cfg()).unwrap();
        assert!(r.residual < 1e-8 && r.residual <= 10.0 * r.est_error.max(1e-15), "{r:?}");
        let p = Params::new(c(1.5), c(2.5), c(1.2), c(1.1));
        let r = duality_residual(&Matrix2::eta(), p, ZetaMethod::Auto, &cfg()).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn outside_region_is_rejected() {
        let p = Params::real(1.0, 2.0, 0.3, -0.9);
        assert!(matches!(xi_d_numeric(&Matrix2::eta(), p, &cfg()), Err(Error::OutsideDomain(_))));
    }
}
