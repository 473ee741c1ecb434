use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::Matrix2;
use super::point::Endpoint;
use crate::error::{Error, Result};
use crate::exact::{rat, GaussianRational};

/// A point of `[1, ∞]`: rational, a quadratic irrational `p + q√d`, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealPoint {
    Rational(BigRational),
    Quadratic { p: BigRational, q: BigRational, d: BigRational },
    Infinity,
}

impl RealPoint {
    pub fn approx(&self) -> f64 {
        use crate::exact::rational_to_f64;
        match self {
            RealPoint::Rational(r) => rational_to_f64(r),
            RealPoint::Quadratic { p, q, d } => {
                rational_to_f64(p) + rational_to_f64(q) * rational_to_f64(d).sqrt()
            }
            RealPoint::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |r: &BigRational| GaussianRational::real(r.clone()).to_string();
        match self {
            RealPoint::Rational(r) => write!(f, "{}", g(r)),
            RealPoint::Quadratic { p, q, d } => {
                let sign = if q.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*sqrt({})", g(p), sign, g(&q.abs()), g(d))
            }
            RealPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for RealPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of testing `g([1,∞]) ∩ [1,∞] ⊂ V(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// A `T ∈ [1, ∞]` with `gT ∈ [1, ∞]` that is not an extremal pair.
    pub witness: Option<RealPoint>,
}

/// Real quadratic `q2 T² + q1 T + q0`.
#[derive(Clone, Debug)]
struct RealQuadratic([BigRational; 3]);

impl RealQuadratic {
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn eval(&self, t: &BigRational) -> BigRational {
        let [q2, q1, q0] = &self.0;
        q2 * t * t + q1 * t + q0
    }

    /// Value at `p + q√d` as `A + B√d`.
    fn eval_quadratic(&self, p: &BigRational, q: &BigRational, d: &BigRational) -> (BigRational, BigRational) {
        let [q2, q1, q0] = &self.0;
        let a = q2 * (p * p + q * q * d) + q1 * p + q0;
        let b = q2 * (p * q * rat(2)) + q1 * q;
        (a, b)
    }
}

/// Sign of `a + b√d` for `d > 0` not a rational square.
fn sign_quadratic(a: &BigRational, b: &BigRational, d: &BigRational) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // Opposite signs: compare a² with b²d.
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n: &BigInt = r.numer();
    let d: &BigInt = r.denom();
    let (sn, sd) = (num_integer::Roots::sqrt(n), num_integer::Roots::sqrt(d));
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// `Im(j_N(g,T) · conj j_D(g,T))` for real `T`; vanishes exactly where `gT` is real or `∞`.
fn imaginary_form(g: &Matrix2) -> RealQuadratic {
    let (cc, dc) = (g.c.conj(), g.d.conj());
    RealQuadratic([
        (&g.a * &cc).im,
        (&g.a * &dc + &g.b * &cc).im,
        (&g.b * &dc).im,
    ])
}

/// `Re((j_N − j_D) · conj j_D)`; where `gT` is real this is `≥ 0` exactly when `gT ∈ [1, ∞]`.
fn upper_form(g: &Matrix2) -> RealQuadratic {
    let (cc, dc) = (g.c.conj(), g.d.conj());
    let (ac, bd) = (&g.a - &g.c, &g.b - &g.d);
    RealQuadratic([
        (&ac * &cc).re,
        (&ac * &dc + &bd * &cc).re,
        (&bd * &dc).re,
    ])
}

fn real_value(z: &GaussianRational) -> Option<BigRational> {
    z.is_real().then(|| z.re.clone())
}

/// Exact test of `g([1,∞]) ∩ [1,∞] ⊂ {g1, g∞} ∩ {1, ∞}`.
pub fn check_def_cond(g: &Matrix2) -> Admissibility {
    let violation = |t: RealPoint| Admissibility { admissible: false, witness: Some(t) };
    let one = BigRational::one();

    if let Some(t) = interior_violation(g) {
        return violation(t);
    }
    // Endpoints: the image must be 1, ∞, or outside [1, ∞].
    for end in [Endpoint::One, Endpoint::Infinity] {
        if let Some(v) = g.act(&end.point()).value().as_ref().and_then(real_value) {
            if v > one {
                return violation(match end {
                    Endpoint::One => RealPoint::Rational(one),
                    Endpoint::Infinity => RealPoint::Infinity,
                });
            }
        }
    }
    Admissibility { admissible: true, witness: None }
}

/// First `T ∈ (1, ∞)` with `gT ∈ [1, ∞]`, if any.
fn interior_violation(g: &Matrix2) -> Option<RealPoint> {
    let one = BigRational::one();
    let im = imaginary_form(g);
    let up = upper_form(g);
    if !im.is_zero() {
        for root in real_roots(&im) {
            match &root {
                RealPoint::Rational(t) => {
                    if *t > one && !up.eval(t).is_negative() {
                        return Some(root);
                    }
                }
                RealPoint::Quadratic { p, q, d } => {
                    let above_one = sign_quadratic(&(p - &one), q, d) == Ordering::Greater;
                    let (a, b) = up.eval_quadratic(p, q, d);
                    if above_one && sign_quadratic(&a, &b, d) != Ordering::Less {
                        return Some(root);
                    }
                }
                RealPoint::Infinity => unreachable!("finite roots only"),
            }
        }
        return None;
    }

    // g is a real Möbius map up to a scalar: membership of gT in [1, ∞] can
    // only change at the pole and at g⁻¹1, so test those and one point of
    // every interval between them.
    let mut breaks: Vec<BigRational> = Vec::new();
    if !g.c.is_zero() {
        if let Some(pole) = real_value(&(-(&g.d / &g.c))) {
            breaks.push(pole);
        }
    }
    let ac = &g.a - &g.c;
    if !ac.is_zero() {
        if let Some(pre) = real_value(&((&g.d - &g.b) / ac)) {
            breaks.push(pre);
        }
    }
    breaks.retain(|b| *b > one);
    breaks.sort();
    breaks.dedup();
    let mut candidates = Vec::new();
    let mut left = one.clone();
    for b in &breaks {
        candidates.push((&left + b) / rat(2));
        candidates.push(b.clone());
        left = b.clone();
    }
    candidates.push(left + rat(1));
    candidates
        .into_iter()
        .find(|t| !up.eval(t).is_negative())
        .map(RealPoint::Rational)
}

/// Real roots of a nonzero quadratic, smaller first.
fn real_roots(q: &RealQuadratic) -> Vec<RealPoint> {
    let [q2, q1, q0] = &q.0;
    if q2.is_zero() {
        if q1.is_zero() {
            return Vec::new();
        }
        return vec![RealPoint::Rational(-(q0 / q1))];
    }
    let disc = q1 * q1 - q2 * q0 * rat(4);
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = q2 * rat(2);
    let p = -(q1 / &two_a);
    match rational_sqrt(&disc) {
        Some(s) => {
            let h = (s / &two_a).abs();
            if h.is_zero() {
                vec![RealPoint::Rational(p)]
            } else {
                vec![RealPoint::Rational(&p - &h), RealPoint::Rational(p + h)]
            }
        }
        None => {
            let q = (BigRational::one() / &two_a).abs();
            vec![
                RealPoint::Quadratic { p: p.clone(), q: -q.clone(), d: disc.clone() },
                RealPoint::Quadratic { p, q, d: disc },
            ]
        }
    }
}

/// A vertex: `T0, X0 ∈ {1, ∞}` with `g T0 = X0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub t0: Endpoint,
    pub x0: Endpoint,
}

/// `V(g) = {g1, g∞} ∩ {1, ∞}`, each point paired with its preimage.
pub fn vertex_set(g: &Matrix2) -> Vec<Vertex> {
    [Endpoint::One, Endpoint::Infinity]
        .into_iter()
        .filter_map(|t0| g.act(&t0.point()).as_endpoint().map(|x0| Vertex { t0, x0 }))
        .collect()
}

/// `k_Z`, sending `Z` to `0`.
fn k_matrix(z: Endpoint) -> Matrix2 {
    match z {
        Endpoint::One => Matrix2::from_ints(1, -1, 1, 0),
        Endpoint::Infinity => Matrix2::from_ints(0, -1, -1, 0),
    }
}

/// Whether the arcs `g([1,∞])` and `[1,∞]` meet tangentially at the vertex.
///
/// With `h = k_{X0} g k_{T0}⁻¹ = (α β; γ δ)`, `β = 0` and the vertex is a
/// cusp exactly when `α·conj(δ)` is a positive real.
pub fn is_cusp(g: &Matrix2, vertex: Vertex) -> Result<bool> {
    if !vertex_set(g).contains(&vertex) {
        return Err(Error::NotAVertex(format!("({}, {})", vertex.t0, vertex.x0)));
    }
    let h = k_matrix(vertex.x0).mul(g).mul(&k_matrix(vertex.t0).inverse());
    debug_assert!(h.b.is_zero(), "h fixes 0");
    let prod = &h.a * &h.d.conj();
    Ok(prod.im.is_zero() && prod.re.is_positive())
}

/// Returns `g` if it satisfies the admissibility condition.
pub fn require_admissible(g: &Matrix2) -> Result<()> {
    match check_def_cond(g).witness {
        None => Ok(()),
        Some(w) => Err(Error::Inadmissible { witness: w.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::moebius::RiemannPoint;
    use proptest::prelude::*;

    fn m(s: &str) -> Matrix2 {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples_are_admissible() {
        assert!(check_def_cond(&Matrix2::eta()).admissible);
        assert!(check_def_cond(&Matrix2::xi()).admissible);
        assert!(check_def_cond(&Matrix2::xi().inverse()).admissible);
    }

    #[test]
    fn translation_fails_with_interior_witness() {
        let r = check_def_cond(&m("1,1;0,1"));
        assert!(!r.admissible);
        assert_eq!(r.witness, Some(RealPoint::Rational(rat(2))));
    }

    #[test]
    fn alpha_family_verdicts() {
        // 3 − T maps [1, 2] onto itself.
        let r = check_def_cond(&Matrix2::alpha(3.into()));
        assert!(!r.admissible);
        assert_eq!(r.witness, Some(RealPoint::Rational(ratio(3, 2))));
        assert!(check_def_cond(&Matrix2::alpha((-2).into())).admissible);
        assert!(check_def_cond(&Matrix2::alpha("i".parse().unwrap())).admissible);
        assert!(check_def_cond(&Matrix2::alpha("3/2".parse().unwrap())).admissible);
    }

    #[test]
    fn irrational_crossing_is_found() {
        // gT is real on [1, ∞] only at T = √2, where gT = √2/2 < 1.
        let g = m("1,i;i,2");
        let r = check_def_cond(&g);
        let brute = brute_force(&g);
        assert_eq!(r.admissible, brute);
    }

    #[test]
    fn vertex_sets_of_worked_examples() {
        let v = |t0, x0| Vertex { t0, x0 };
        use Endpoint::*;
        assert_eq!(vertex_set(&Matrix2::eta()), vec![v(Infinity, Infinity)]);
        assert_eq!(vertex_set(&Matrix2::xi()), vec![v(Infinity, One)]);
        assert_eq!(vertex_set(&Matrix2::xi().inverse()), vec![v(One, Infinity)]);
        assert!(vertex_set(&m("2,1;1,3")).is_empty());
    }

    #[test]
    fn cusp_classification() {
        use Endpoint::*;
        let v = |t0, x0| Vertex { t0, x0 };
        assert!(!is_cusp(&Matrix2::eta(), v(Infinity, Infinity)).unwrap());
        assert!(!is_cusp(&Matrix2::xi(), v(Infinity, One)).unwrap());
        assert!(is_cusp(&m("1,i;0,1"), v(Infinity, Infinity)).unwrap());
        assert!(matches!(is_cusp(&Matrix2::eta(), v(One, One)), Err(Error::NotAVertex(_))));
    }

    /// Dense sampling of `[1, ∞]` through `T = 1/s`, `s ∈ (0, 1]`.
    fn brute_force(g: &Matrix2) -> bool {
        let gc = g.to_complex();
        for k in 1..4000 {
            let s = k as f64 / 4000.0;
            for t in [1.0 / s, 1.0 + s] {
                if let Some(z) = gc.act(num_complex::Complex64::new(t, 0.0)) {
                    if z.im.abs() < 1e-12 && z.re > 1.0 + 1e-9 && t > 1.0 + 1e-9 {
                        return false;
                    }
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn scaling_preserves_cusps(k_re in -3i64..4, k_im in -3i64..4) {
            prop_assume!(k_re != 0 || k_im != 0);
            let k = GaussianRational::new(rat(k_re), rat(k_im));
            for g in [Matrix2::eta(), Matrix2::xi(), m("1,i;0,1"), m("-1,i;0,1")] {
                let h = g.scale(&k).unwrap();
                prop_assert_eq!(vertex_set(&g), vertex_set(&h));
                for v in vertex_set(&g) {
                    prop_assert_eq!(is_cusp(&g, v).unwrap(), is_cusp(&h, v).unwrap());
                }
                prop_assert_eq!(check_def_cond(&g).admissible, check_def_cond(&h).admissible);
            }
        }

        #[test]
        fn agrees_with_sampling(a in -3i64..4, b in -3i64..4, c in -3i64..4, d in -3i64..4, bi in -2i64..3) {
            let b = GaussianRational::new(rat(b), rat(bi));
            let Ok(g) = Matrix2::new(a.into(), b, c.into(), d.into()) else { return Ok(()) };
            let exact = check_def_cond(&g);
            // Sampling can miss isolated crossing points but never invents one.
            if !brute_force(&g) {
                prop_assert!(!exact.admissible);
            }
            if let Some(RealPoint::Rational(t)) = &exact.witness {
                let z = g.act(&RiemannPoint::finite(GaussianRational::real(t.clone())));
                let ok = z.is_infinity() || z.value().unwrap().is_real() && z.value().unwrap().re >= rat(1);
                prop_assert!(ok);
            }
        }
    }
}
