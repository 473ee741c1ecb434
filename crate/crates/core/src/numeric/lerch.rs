use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::recip_gamma;
use super::quad::DeMap;
use super::{cdiv, ComplexEval, Method};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Series path radius.
const SERIES_RADIUS: f64 = 0.5;
/// Relative accuracy below which the cached kernel is refined.
const KERNEL_REL_TOL: f64 = 1e-12;
const COARSE_LEVEL: u32 = 7;
const FINE_LEVEL: u32 = 9;
/// Circle radii available to the contour kernel, largest first.
const HANKEL_RADII: [f64; 6] = [0.5, 0.125, 0.031_25, 7.8e-3, 1.95e-3, 4.9e-4];

/// `a^b` on the principal branch, `arg a ∈ (−π, π]`.
pub fn cpow(a: Complex64, b: Complex64) -> Complex64 {
    if a == ZERO {
        return if b == ZERO { ONE } else { ZERO };
    }
    (b * a.ln()).exp()
}

/// `t^{s−1}` on `t = ε e^{iθ}` with the phase continued from `θ = 0`.
pub(crate) fn continued_power(eps: f64, s: Complex64, theta: f64) -> Complex64 {
    ((s - 1.0) * Complex64::new(eps.ln(), theta)).exp()
}

/// Checks that continuing `t^{s−1}` once around the circle multiplies it
/// by `e^{2πi(s−1)}`.
pub(crate) fn assert_phase_closure(eps: f64, s: Complex64) -> Result<()> {
    let start = continued_power(eps, s, 0.0);
    let end = continued_power(eps, s, 2.0 * PI);
    let expected = start * ((s - 1.0) * TWO_PI_I).exp();
    if (end - expected).norm() > 1e-12 * expected.norm().max(1e-300) {
        return Err(Error::Quadrature(format!("phase closure failed for s = {s}")));
    }
    Ok(())
}

/// `1 − e^{−x}` without cancellation near `x = 0`.
fn one_minus_exp_neg(x: Complex64) -> Complex64 {
    let (a, b) = (-x.re, -x.im);
    let half = (0.5 * b).sin();
    -Complex64::new(a.exp_m1() * b.cos() - 2.0 * half * half, a.exp() * b.sin())
}

/// `ln(1 − x)` without cancellation near `x = 0`.
fn ln_one_minus(x: Complex64) -> Complex64 {
    let (a, b) = (-x.re, -x.im);
    Complex64::new(0.5 * (2.0 * a + a * a + b * b).ln_1p(), b.atan2(1.0 + a))
}

/// Quadrature nodes for `∫ K(x) / (1 − z e^{−x}) dx`, stored as
/// `(e^{−x}, 1 − e^{−x}, weight, also_on_coarse_grid)` so that the
/// denominator can be formed as `(1 − e^{−x}) + (1 − z) e^{−x}`.
struct Kernel {
    nodes: Vec<(Complex64, Complex64, Complex64, bool)>,
}

fn kernel_node(x: Complex64, k: Complex64, coarse: bool) -> (Complex64, Complex64, Complex64, bool) {
    ((-x).exp(), one_minus_exp_neg(x), k, coarse)
}

impl Kernel {
    /// `(1/Γ(u)) ∫_0^∞ x^{u−1} e^{−yx} / (1 − z e^{−x}) dx`, `Re u > 0`.
    fn direct(u: Complex64, y: Complex64, level: u32) -> Self {
        let rg = recip_gamma(u);
        let nodes = DeMap::ExpSinh { a: 0.0 }
            .nodes(level)
            .into_iter()
            .map(|(x, w, coarse)| {
                let k = rg * w * ((u - 1.0) * x.ln() - y * x).exp();
                kernel_node(Complex64::new(x, 0.0), k, coarse)
            })
            .collect();
        Kernel { nodes }
    }

    /// Hankel form for `u ∉ ℤ`: ray `[ε, ∞)` plus the circle `|x| = ε`
    /// weighted by `1/(e^{2πiu} − 1)`.
    fn contour(u: Complex64, y: Complex64, eps: f64, level: u32) -> Result<Self> {
        assert_phase_closure(eps, u)?;
        let rg = recip_gamma(u);
        let circle_factor = rg / ((u * TWO_PI_I).exp() - 1.0);
        let mut nodes: Vec<_> = DeMap::ExpSinh { a: eps }
            .nodes(level)
            .into_iter()
            .map(|(x, w, coarse)| {
                let k = rg * w * ((u - 1.0) * x.ln() - y * x).exp();
                kernel_node(Complex64::new(x, 0.0), k, coarse)
            })
            .collect();
        let circle_map = DeMap::TanhSinh { a: 0.0, b: 2.0 * PI };
        for (theta, w, coarse) in circle_map.nodes(level) {
            let x = Complex64::from_polar(eps, theta);
            let dx = Complex64::new(0.0, 1.0) * x;
            let k = circle_factor * w * continued_power(eps, u, theta) * dx * (-y * x).exp();
            nodes.push(kernel_node(x, k, coarse));
        }
        Ok(Kernel { nodes })
    }

    /// Fine sum, coarse-grid sum and `Σ |terms|` at `z = 1 − delta`.
    fn eval(&self, delta: Complex64) -> (Complex64, f64, f64) {
        let mut fine = ZERO;
        let mut coarse = ZERO;
        let mut abs = 0.0;
        for &(e, ome, k, on_coarse) in &self.nodes {
            let term = cdiv(k, ome + delta * e);
            fine += term;
            abs += term.norm();
            if on_coarse {
                coarse += term;
            }
        }
        (fine, (fine - 2.0 * coarse).norm(), abs)
    }
}

enum Kind {
    /// `u = −l`: `Φ = Σ_k p_k(y) W^k`, `W = 1/(1 − z)`.
    Rational(Vec<Complex64>),
    Transcendental {
        /// Number of recurrence steps `Φ(y) = y^{−u} + zΦ(y+1)` applied.
        shift: usize,
        /// `(y + j)^{−u}` for `j < shift`.
        prefix: Vec<Complex64>,
        shifted_y: Complex64,
        direct: [OnceLock<Kernel>; 2],
        contour: [[OnceLock<Option<Kernel>>; 2]; HANKEL_RADII.len()],
    },
}

/// `Φ(z, u, y) = Σ_{n≥0} z^n (n + y)^{−u}` for fixed `(u, y)`, continued to
/// `z ∈ ℂ ∖ [1, ∞)`. Quadrature weights depending only on `(u, y)` are built
/// once and reused across `z`.
pub struct Lerch {
    u: Complex64,
    y: Complex64,
    kind: Kind,
}

fn nonpositive_integer(u: Complex64) -> Option<usize> {
    (u.im == 0.0 && u.re <= 0.0 && u.re == u.re.round()).then(|| (-u.re) as usize)
}

impl Lerch {
    pub fn new(u: Complex64, y: Complex64) -> Result<Self> {
        if !(u.re.is_finite() && u.im.is_finite() && y.re.is_finite() && y.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite Lerch parameter".into()));
        }
        if let Some(l) = nonpositive_integer(u) {
            let mut p = vec![ZERO, ONE];
            for _ in 0..l {
                let mut next = vec![ZERO; p.len() + 1];
                for (k, pk) in p.iter().enumerate() {
                    let kf = k as f64;
                    next[k] += (y - kf) * pk;
                    next[k + 1] += kf * pk;
                }
                p = next;
            }
            return Ok(Lerch { u, y, kind: Kind::Rational(p) });
        }
        // Just enough steps to reach Re y > 0; more would make the prefix
        // cancel against z^shift Φ when |z| is large.
        let shift = if y.re > 0.0 { 0 } else { (-y.re).floor() as usize + 1 };
        let mut prefix = Vec::with_capacity(shift);
        for j in 0..shift {
            let base = y + j as f64;
            if base == ZERO {
                if u.re > 0.0 {
                    return Err(Error::Pole(format!("y + {j} = 0 with Re u > 0")));
                }
                prefix.push(ZERO);
            } else {
                prefix.push(cpow(base, -u));
            }
        }
        Ok(Lerch {
            u,
            y,
            kind: Kind::Transcendental {
                shift,
                prefix,
                shifted_y: y + shift as f64,
                direct: Default::default(),
                contour: Default::default(),
            },
        })
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn y(&self) -> Complex64 {
        self.y
    }

    pub fn eval(&self, z: Complex64) -> Result<ComplexEval> {
        self.eval_with_complement(z, ONE - z)
    }

    /// `Φ(z, u, y)` given `delta = 1 − z` computed separately, which keeps
    /// accuracy when `z` rounds to 1.
    pub fn eval_with_complement(&self, z: Complex64, delta: Complex64) -> Result<ComplexEval> {
        if !(z.re.is_finite() && z.im.is_finite() && delta.re.is_finite() && delta.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite z = {z}")));
        }
        match &self.kind {
            Kind::Rational(p) => {
                if delta == ZERO {
                    return Err(Error::Pole("z = 1 with nonpositive integer u".into()));
                }
                let w = 1.0 / delta;
                let mut value = ZERO;
                let mut abs = 0.0;
                for pk in p.iter().rev() {
                    value = value * w + pk;
                    abs = abs * w.norm() + pk.norm();
                }
                Ok(ComplexEval { value, est_error: 8.0 * f64::EPSILON * abs, method: Method::Rational })
            }
            Kind::Transcendental { shift, prefix, shifted_y, direct, contour } => {
                if z.norm() <= SERIES_RADIUS {
                    return self.series(z);
                }
                if delta.im == 0.0 && delta.re <= 0.0 && !(delta.re == 0.0 && self.u.re > 1.0) {
                    return Err(Error::OnBranchCut(format!("z = {z}")));
                }
                let (tail, tail_err, method) = if self.u.re > 0.0 {
                    let (v, e) = self.refine(|i| {
                        Some(direct[i].get_or_init(|| {
                            Kernel::direct(self.u, *shifted_y, [COARSE_LEVEL, FINE_LEVEL][i])
                        }))
                    }, delta)?;
                    (v, e, Method::Integral)
                } else {
                    // Pole of 1/(1 − z e^{−x}) nearest to the origin.
                    let log_z = ln_one_minus(delta);
                    let dist = (-1..=1)
                        .map(|k| (log_z + TWO_PI_I * k as f64).norm())
                        .fold(f64::INFINITY, f64::min);
                    let Some(r) = HANKEL_RADII.iter().position(|&eps| 2.0 * eps < dist) else {
                        return Err(Error::OutsideDomain(format!("z = {z} too close to 1 for Re u <= 0")));
                    };
                    let eps = HANKEL_RADII[r];
                    let (v, e) = self.refine(|i| {
                        contour[r][i]
                            .get_or_init(|| {
                                Kernel::contour(self.u, *shifted_y, eps, [COARSE_LEVEL, FINE_LEVEL][i]).ok()
                            })
                            .as_ref()
                    }, delta)?;
                    (v, e, Method::Hankel)
                };
                let mut value = ZERO;
                let mut abs = 0.0;
                let mut zp = ONE;
                for pj in prefix {
                    value += zp * pj;
                    abs += (zp * pj).norm();
                    zp *= z;
                }
                debug_assert_eq!(prefix.len(), *shift);
                value += zp * tail;
                abs += (zp * tail).norm();
                let est_error = zp.norm() * tail_err + 4.0 * f64::EPSILON * abs;
                Ok(ComplexEval { value, est_error, method })
            }
        }
    }

    /// Evaluates with the coarse kernel and falls back to the fine one if the
    /// level-difference estimate is too large.
    fn refine<'a>(
        &'a self,
        kernel: impl Fn(usize) -> Option<&'a Kernel>,
        delta: Complex64,
    ) -> Result<(Complex64, f64)> {
        let mut best = None;
        for i in 0..2 {
            let k = kernel(i).ok_or_else(|| Error::Quadrature("phase closure failed".into()))?;
            let (v, diff, abs) = k.eval(delta);
            let err = diff + 4.0 * f64::EPSILON * abs;
            best = Some((v, err));
            if err <= KERNEL_REL_TOL * v.norm() {
                break;
            }
        }
        Ok(best.expect("two levels tried"))
    }

    fn series(&self, z: Complex64) -> Result<ComplexEval> {
        let r = z.norm();
        let mut value = ZERO;
        let mut abs = 0.0;
        let mut zp = ONE;
        let mut small = 0;
        let mut last = 0.0;
        for n in 0..4000 {
            let base = self.y + n as f64;
            let term = if base == ZERO {
                if self.u.re > 0.0 {
                    return Err(Error::Pole(format!("y + {n} = 0")));
                }
                ZERO
            } else {
                zp * cpow(base, -self.u)
            };
            value += term;
            abs += term.norm();
            last = term.norm();
            if n >= 8 && last <= 1e-18 * value.norm().max(1e-300) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            zp *= z;
            if zp == ZERO {
                break;
            }
        }
        let tail = 2.0 * last * r / (1.0 - r);
        Ok(ComplexEval { value, est_error: tail + 4.0 * f64::EPSILON * abs, method: Method::Series })
    }
}

/// One-off `Φ(z, u, y)`.
pub fn lerch_phi(z: Complex64, u: Complex64, y: Complex64) -> Result<ComplexEval> {
    Lerch::new(u, y)?.eval(z)
}
