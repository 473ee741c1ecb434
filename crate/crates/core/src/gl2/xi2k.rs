use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{phi_nonpositive, YSpec};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, GaussianRational, PolyYW, Var};
use crate::moebius::Matrix2;

/// `Φ(z0, −p, w)` as a polynomial in `w`, for `z0 ≠ 1`.
fn phi_at(z0: &GaussianRational, p: usize) -> PolyYW {
    let big_w = (GaussianRational::from_int(1) - z0).inv().expect("z0 != 1");
    let mut acc = PolyYW::zero();
    let mut power = GaussianRational::from_int(1);
    for pk in phi_nonpositive(p) {
        acc.add_scaled(&power, &pk.swap());
        power = &power * &big_w;
    }
    acc
}

/// Coefficients `e_r(w)` of `Π_{j=1}^n (X + j − w) = Σ_r e_r(w) X^r`.
fn shifted_rising(n: usize) -> Vec<PolyYW> {
    let mut e = vec![PolyYW::from_int(1)];
    for j in 1..=n {
        let root = PolyYW::linear(Var::W, &GaussianRational::from_int(-(j as i64))).scale(&GaussianRational::from_int(-1));
        let mut next = vec![PolyYW::zero(); e.len() + 1];
        for (r, er) in e.iter().enumerate() {
            next[r + 1].add_assign_ref(er);
            next[r].add_assign_ref(&root.mul_ref(er));
        }
        e = next;
    }
    e
}

/// `F_n(w) = m! [t^m] e^{wt} / (c e^{−t} + d)^{n+1}` as a polynomial in `w`.
fn inner_factor(g: &Matrix2, n: usize, m: usize) -> Result<PolyYW> {
    let w_m = PolyYW::w().pow(m as u32);
    if g.c.is_zero() {
        let scale = g.d.pow(-(n as i64 + 1)).expect("d != 0 when c = 0");
        return Ok(w_m.scale(&scale));
    }
    let scale = g.c.pow(-(n as i64 + 1)).expect("c != 0");
    let shift = GaussianRational::from_int(n as i64 + 1);
    if g.d.is_zero() {
        return Ok(w_m.shift(Var::W, &shift).scale(&scale));
    }
    // e^{wt}/(c e^{−t} + d)^{n+1} = c^{−n−1} e^{(w+n+1)t} (1 − z0 e^t)^{−n−1}
    // with z0 = −d/c; expanding the binomial series gives Φ at −m−r.
    let z0 = -(&g.d * &g.c.inv().expect("c != 0"));
    if z0 == GaussianRational::from_int(1) {
        return Err(Error::Unsupported("z0 = -d/c = 1".into()));
    }
    if let Some(x) = z0.as_real() {
        if *x > BigRational::one() {
            return Err(Error::Inadmissible { witness: format!("-d/c = {z0}") });
        }
    }
    let mut g_n = PolyYW::zero();
    for (r, er) in shifted_rising(n).iter().enumerate() {
        g_n.add_assign_ref(&er.mul_ref(&phi_at(&z0, m + r)));
    }
    let inv_fact = GaussianRational::real(BigRational::new(BigInt::one(), factorial(n)));
    Ok(g_n.shift(Var::W, &shift).scale(&(&scale * &inv_fact)))
}

/// The finite part `ξ_{2,k}(u, −m; y, w; g)` of the zeta-function at a
/// nonpositive integer `s = −m`:
/// `Σ_{n<k} (y+n)^{−u} Σ_j C(n,j) a^j b^{n−j} F_n(w − j)`.
///
/// When `g1 = 0` the terms `n > m` vanish and `k = m + 1` gives
/// `𝔹_m^(u)(y,w;g)`.
pub fn xi2k_exact(g: &Matrix2, k: usize, u: i64, m: usize, y: &YSpec) -> Result<PolyYW> {
    let mut out = PolyYW::zero();
    for n in 0..k {
        let f = inner_factor(g, n, m)?;
        let mut inner = PolyYW::zero();
        for j in 0..=n {
            let coeff = GaussianRational::real(BigRational::from_integer(binomial(n, j)))
                * g.a.pow(j as i64).expect("nonnegative exponent")
                * g.b.pow((n - j) as i64).expect("nonnegative exponent");
            if coeff.is_zero() {
                continue;
            }
            inner.add_scaled(&coeff, &f.shift(Var::W, &GaussianRational::from_int(-(j as i64))));
        }
        out.add_assign_ref(&y.power(n as i64, u)?.mul_ref(&inner));
    }
    Ok(out)
}
