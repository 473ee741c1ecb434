use num_rational::BigRational;
use num_traits::Zero;

use super::YSpec;
use crate::error::{Error, Result};
use crate::exact::{binomial, GaussianRational, PolyYW, Var};

fn binom(n: usize, j: usize) -> GaussianRational {
    GaussianRational::real(BigRational::from_integer(binomial(n, j)))
}

fn signed(v: GaussianRational, odd: bool) -> GaussianRational {
    if odd {
        -v
    } else {
        v
    }
}

/// `Σ_{n≤m} (y+n)^{−u} Σ_j C(n,j) (−1)^j (w−j)^m / d^{n+1}`, the value of
/// `𝔹_m^(u)(y,w;h_d)` for `h_d = (−1 1; 0 d)`.
pub fn closed_form_hd(m: usize, u: i64, y: &YSpec, d: &GaussianRational) -> Result<PolyYW> {
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let d_inv = d.inv().expect("nonzero");
    let mut out = PolyYW::zero();
    let mut d_pow = d_inv.clone();
    for n in 0..=m {
        let mut inner = PolyYW::zero();
        for j in 0..=n {
            let shifted = PolyYW::linear(Var::W, &GaussianRational::from_int(-(j as i64))).pow(m as u32);
            inner.add_scaled(&signed(binom(n, j), j % 2 == 1), &shifted);
        }
        out.add_assign_ref(&y.power(n as i64, u)?.mul_ref(&inner).scale(&d_pow));
        d_pow = &d_pow * &d_inv;
    }
    Ok(out)
}

/// `Σ_{n≤m} (y+n)^{−u} Σ_j C(n,j) (−1)^{n−j} (w+n+1−j)^m / c^{n+1}`, the
/// value of `𝔹_m^(u)(y,w;h'_c)` for `h'_c = (1 −1; c 0)`.
pub fn closed_form_hcprime(m: usize, u: i64, y: &YSpec, c: &GaussianRational) -> Result<PolyYW> {
    if c.is_zero() {
        return Err(Error::Singular);
    }
    let c_inv = c.inv().expect("nonzero");
    let mut out = PolyYW::zero();
    let mut c_pow = c_inv.clone();
    for n in 0..=m {
        let mut inner = PolyYW::zero();
        for j in 0..=n {
            let delta = GaussianRational::from_int((n + 1 - j) as i64);
            let shifted = PolyYW::linear(Var::W, &delta).pow(m as u32);
            inner.add_scaled(&signed(binom(n, j), (n - j) % 2 == 1), &shifted);
        }
        out.add_assign_ref(&y.power(n as i64, u)?.mul_ref(&inner).scale(&c_pow));
        c_pow = &c_pow * &c_inv;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{poly_bernoulli_b, poly_bernoulli_b_closed, poly_bernoulli_c};
    use crate::exact::rat;
    use crate::gl2::{bigen_series, unigen_series};
    use crate::moebius::Matrix2;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn hd_at_one_gives_first_kind() {
        let one = YSpec::Value(g("1"));
        for k in -4..=4 {
            let b = poly_bernoulli_b(7, k);
            for m in 0..=7 {
                let v = closed_form_hd(m, k, &one, &g("1")).unwrap().eval_var(Var::W, &g("0"));
                assert_eq!(v, PolyYW::constant(b[m].clone().into()));
                assert_eq!(v, PolyYW::constant(poly_bernoulli_b_closed(m, k).into()));
            }
        }
    }

    #[test]
    fn hcprime_at_one_gives_signed_second_kind() {
        let one = YSpec::Value(g("1"));
        for k in -4..=4 {
            let c = poly_bernoulli_c(7, k);
            for m in 0..=7 {
                let v = closed_form_hcprime(m, k, &one, &g("1")).unwrap().eval_var(Var::W, &g("0"));
                let sign = if m % 2 == 0 { 1 } else { -1 };
                assert_eq!(v, PolyYW::constant((c[m].clone() * rat(sign)).into()));
            }
        }
    }

    #[test]
    fn hcprime_order_zero_is_single_term() {
        let y = YSpec::Value(g("3/2"));
        let v = closed_form_hcprime(0, 2, &y, &g("2+i")).unwrap();
        let expected = (g("3/2").pow(2).unwrap() * g("2+i")).inv().unwrap();
        assert_eq!(v, PolyYW::constant(expected));
    }

    #[test]
    fn symbolic_forms_match_series() {
        for p in ["2", "-3", "1+i", "1/2"] {
            let x = g(p);
            let hd = bigen_series(&Matrix2::h_d(x.clone()).unwrap(), 5, 5).unwrap();
            let hc = bigen_series(&Matrix2::h_c_prime(x.clone()).unwrap(), 5, 5).unwrap();
            for m in 0..=5 {
                for l in 0..=5 {
                    let u = -(l as i64);
                    assert_eq!(&closed_form_hd(m, u, &YSpec::Symbolic, &x).unwrap(), hd.get(m, l));
                    assert_eq!(&closed_form_hcprime(m, u, &YSpec::Symbolic, &x).unwrap(), hc.get(m, l));
                }
            }
        }
    }

    #[test]
    fn positive_order_matches_series() {
        let y = YSpec::Value(g("2/3"));
        for u in 1..=3 {
            let hd = unigen_series(&Matrix2::h_d(g("2")).unwrap(), u, &y, 5).unwrap();
            let hc = unigen_series(&Matrix2::h_c_prime(g("-1+i")).unwrap(), u, &y, 5).unwrap();
            for m in 0..=5 {
                assert_eq!(closed_form_hd(m, u, &y, &g("2")).unwrap(), hd[m]);
                assert_eq!(closed_form_hcprime(m, u, &y, &g("-1+i")).unwrap(), hc[m]);
            }
        }
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            closed_form_hd(3, 1, &YSpec::Value(g("-2")), &g("1")),
            Err(Error::Pole(_))
        ));
    }
}
