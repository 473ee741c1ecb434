use num_traits::Zero;

use super::{g_one, YSpec};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, PolyYW, SeriesVar, TruncSeries1};
use crate::moebius::Matrix2;

/// `Φ(z, −l, y) = Σ_k p_k(y) W^k` with `W = 1/(1 − z)`; returns
/// `[p_0, …, p_{l+1}]`, polynomials in `y`.
///
/// Starts from `Φ(z, 0, y) = W` and applies `y + ϑ_z` `l` times, using
/// `ϑ_z W^k = k (W^{k+1} − W^k)`.
pub fn phi_nonpositive(l: usize) -> Vec<PolyYW> {
    let mut p = vec![PolyYW::zero(), PolyYW::from_int(1)];
    for _ in 0..l {
        let mut next = vec![PolyYW::zero(); p.len() + 1];
        for (k, pk) in p.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            next[k].add_assign_ref(&PolyYW::y().mul_ref(pk));
            if k > 0 {
                let kk = GaussianRational::from_int(k as i64);
                next[k + 1].add_scaled(&kk, pk);
                next[k].add_scaled(&-kk, pk);
            }
        }
        p = next;
    }
    p
}

fn lift(s: &TruncSeries1<GaussianRational>) -> TruncSeries1<PolyYW> {
    TruncSeries1::new(
        SeriesVar::T,
        s.coeffs().iter().cloned().map(PolyYW::constant).collect(),
    )
}

/// `α e^{−t} + β` to `order`.
fn affine_exp(alpha: &GaussianRational, beta: &GaussianRational, order: usize) -> TruncSeries1<GaussianRational> {
    let e = TruncSeries1::exp_linear(&GaussianRational::from_int(-1), SeriesVar::T, order);
    let mut coeffs = e.scale(alpha).into_coeffs();
    coeffs[0] = &coeffs[0] + beta;
    TruncSeries1::new(SeriesVar::T, coeffs)
}

/// `𝔹_0^(u), …, 𝔹_order^(u)` from `e^{wt} Φ(g e^{−t}, u, y) / j_D(g, e^{−t})`.
///
/// Requires `g1 ∉ {1, ∞}`. For `u ≤ 0` the Lerch function is a polynomial
/// in `W = 1/(1 − g e^{−t})` and `y` may stay symbolic. For `u ≥ 1` the
/// sum `Σ_n (g e^{−t})^n / (n + y)^u` is only finite when `g1 = 0` (so the
/// `n`-th term has valuation `n`), and `y` must be fixed.
pub fn unigen_series(g: &Matrix2, u: i64, y: &YSpec, order: usize) -> Result<Vec<PolyYW>> {
    let (num1, den1) = g_one(g);
    if den1.is_zero() {
        return Err(Error::Unsupported(
            "the univariate expansion needs g1 != inf; use the bivariate route".into(),
        ));
    }
    if g.fixes_one() {
        return Err(Error::DegenerateAtOne);
    }
    let jd = affine_exp(&g.c, &g.d, order);
    let phi: TruncSeries1<PolyYW> = if u <= 0 {
        // W(t) = (c e^{−t} + d) / ((c − a) e^{−t} + (d − b)).
        let w_den = affine_exp(&(&g.c - &g.a), &(&g.d - &g.b), order);
        let w = lift(&jd.div(&w_den)?);
        let coeffs = phi_nonpositive((-u) as usize);
        let mut acc = TruncSeries1::zero(SeriesVar::T, order);
        let mut power = TruncSeries1::one(SeriesVar::T, order);
        for pk in &coeffs {
            acc = acc.add(&power.scale(pk))?;
            power = power.mul(&w)?;
        }
        acc
    } else {
        if !num1.is_zero() {
            return Err(Error::Unsupported(
                "positive u needs g1 = 0 for an exact expansion".into(),
            ));
        }
        let YSpec::Value(_) = y else {
            return Err(Error::Unsupported("a positive order u needs a concrete y".into()));
        };
        let z = lift(&affine_exp(&g.a, &g.b, order).div(&jd)?);
        let mut acc = TruncSeries1::zero(SeriesVar::T, order);
        let mut power = TruncSeries1::one(SeriesVar::T, order);
        for n in 0..=order {
            acc = acc.add(&power.scale(&y.power(n as i64, u)?))?;
            power = power.mul(&z)?;
        }
        acc
    };
    let ewt = TruncSeries1::exp_linear(&PolyYW::w(), SeriesVar::T, order);
    let f = ewt.mul(&phi)?.div(&lift(&jd))?;
    Ok(f.egf_coefficients().into_iter().map(|p| y.apply(p)).collect())
}
