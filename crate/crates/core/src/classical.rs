//! Stirling numbers, Bernoulli numbers and the two classical families of
//! poly-Bernoulli numbers `B_n^(k)`, `C_n^(k)` for every integer `k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{
    binomial, factorial, rat, rational_pow, GaussianRational, PolyYW, SeriesVar,
    TruncSeries1,
};

/// Unsigned Stirling number of the first kind: the coefficient of `X^m` in
/// `X(X+1)…(X+n−1)`.
pub fn stirling1(n: usize, m: usize) -> BigInt {
    // Expand the rising factorial one linear factor at a time.
    let mut poly = vec![BigInt::one()];
    for j in 0..n {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] += c * BigInt::from(j);
        }
        poly = next;
    }
    poly.get(m).cloned().unwrap_or_default()
}

/// Stirling number of the second kind from
/// `{m, n} = ((−1)^n / n!) Σ_j (−1)^j C(n,j) j^m`.
pub fn stirling2(m: usize, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=n {
        let term = binomial(n, j) * num_traits::pow(BigInt::from(j), m);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let signed = if n % 2 == 0 { acc } else { -acc };
    signed / factorial(n)
}

/// `1 − e^{−t}` and `e^t − 1`, each divided by `t`, to `order`.
fn unit_denominators(order: usize) -> (TruncSeries1<BigRational>, TruncSeries1<BigRational>) {
    let e_minus = TruncSeries1::exp_linear(&rat(-1), SeriesVar::T, order + 1);
    let e_plus = TruncSeries1::exp_linear(&rat(1), SeriesVar::T, order + 1);
    let one = TruncSeries1::one(SeriesVar::T, order + 1);
    let b = one.sub(&e_minus).expect("same order").shift_down();
    let c = e_plus.sub(&one).expect("same order").shift_down();
    (b, c)
}

/// `Li_k(1 − e^{−t}) / t` to `order`.
///
/// `(1 − e^{−t})^m` has valuation `m`, so the terms `m ≤ order + 1` of the
/// polylogarithm give every coefficient exactly, for any integer `k`.
fn polylog_over_t(order: usize, k: i64) -> TruncSeries1<BigRational> {
    let e_minus = TruncSeries1::exp_linear(&rat(-1), SeriesVar::T, order + 1);
    let z = TruncSeries1::one(SeriesVar::T, order + 1).sub(&e_minus).expect("same order");
    let mut li = TruncSeries1::zero(SeriesVar::T, order + 1);
    let mut power = z.clone();
    for m in 1..=order + 1 {
        let weight = rational_pow(&rat(m as i64), -k).expect("m >= 1");
        li = li.add(&power.scale(&weight)).expect("same order");
        power = power.mul(&z).expect("same order");
    }
    li.shift_down()
}

/// `B_0^(k), …, B_order^(k)` from `Li_k(1 − e^{−t}) / (1 − e^{−t})`.
pub fn poly_bernoulli_b(order: usize, k: i64) -> Vec<BigRational> {
    let (den, _) = unit_denominators(order);
    polylog_over_t(order, k).div(&den).expect("unit constant").egf_coefficients()
}

/// `C_0^(k), …, C_order^(k)` from `Li_k(1 − e^{−t}) / (e^t − 1)`.
pub fn poly_bernoulli_c(order: usize, k: i64) -> Vec<BigRational> {
    let (_, den) = unit_denominators(order);
    polylog_over_t(order, k).div(&den).expect("unit constant").egf_coefficients()
}

/// Bernoulli numbers with `B_1 = −1/2`, i.e. `C_n^(1)`.
pub fn bernoulli_numbers(order: usize) -> Vec<BigRational> {
    poly_bernoulli_c(order, 1)
}

/// `B_m^(k) = (−1)^m Σ_n (−1)^n n! {m, n} / (n+1)^k`.
pub fn poly_bernoulli_b_closed(m: usize, k: i64) -> BigRational {
    let mut acc = BigRational::zero();
    for n in 0..=m {
        let s2 = stirling2(m, n);
        if s2.is_zero() {
            continue;
        }
        let term = BigRational::from_integer(factorial(n) * s2)
            * rational_pow(&rat(n as i64 + 1), -k).expect("n + 1 >= 1");
        if n % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if m % 2 == 0 {
        acc
    } else {
        -acc
    }
}

/// `B_m^(k)(w)` from `e^{−wt} Li_k(1 − e^{−t}) / (1 − e^{−t})`, as a
/// polynomial in `w` alone.
pub fn poly_bernoulli_poly(m: usize, k: i64) -> PolyYW {
    let b = poly_bernoulli_b(m, k);
    let mut out = PolyYW::zero();
    for (j, bj) in b.iter().enumerate() {
        let e = (m - j) as u32;
        let sign = if e % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(binomial(m, j) * BigInt::from(sign)) * bj;
        out.add_assign_ref(&PolyYW::monomial(GaussianRational::real(c), 0, e));
    }
    out
}

/// `B_m^(k)(w)` evaluated at a rational point.
pub fn poly_bernoulli_poly_at(m: usize, k: i64, w: &BigRational) -> BigRational {
    let p = poly_bernoulli_poly(m, k);
    p.eval(&GaussianRational::zero(), &GaussianRational::real(w.clone())).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn stirling_first_kind_values() {
        assert_eq!(stirling1(0, 0), BigInt::one());
        assert!((1..5).all(|m| stirling1(0, m).is_zero()));
        assert_eq!(stirling1(3, 1), BigInt::from(2));
        assert_eq!(stirling1(3, 2), BigInt::from(3));
        for n in 0..12 {
            for m in 1..12 {
                assert_eq!(
                    stirling1(n + 1, m),
                    stirling1(n, m - 1) + BigInt::from(n) * stirling1(n, m)
                );
            }
        }
    }

    #[test]
    fn stirling_second_kind_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        for m in 0..=6 {
            for n in m + 1..=6 {
                assert!(stirling2(m, n).is_zero());
            }
        }
        for m in 1..=12 {
            for n in 1..=12 {
                assert_eq!(
                    stirling2(m, n),
                    BigInt::from(n) * stirling2(m - 1, n) + stirling2(m - 1, n - 1)
                );
            }
        }
    }

    #[test]
    fn first_kind_bernoulli_values() {
        assert_eq!(poly_bernoulli_b(2, 1), vec![rat(1), ratio(1, 2), ratio(1, 6)]);
        assert_eq!(poly_bernoulli_c(1, 1)[1], ratio(-1, 2));
    }

    #[test]
    fn closed_form_matches_series() {
        for k in -8..=8 {
            let series = poly_bernoulli_b(12, k);
            for (m, v) in series.iter().enumerate() {
                assert_eq!(&poly_bernoulli_b_closed(m, k), v, "m={m} k={k}");
            }
            assert_eq!(poly_bernoulli_b_closed(0, k), rat(1));
        }
    }

    #[test]
    fn polynomial_endpoints() {
        for k in -4..=4 {
            let b = poly_bernoulli_b(6, k);
            let c = poly_bernoulli_c(6, k);
            for m in 0..=6 {
                assert_eq!(poly_bernoulli_poly_at(m, k, &rat(0)), b[m]);
                assert_eq!(poly_bernoulli_poly_at(m, k, &rat(1)), c[m]);
            }
        }
    }
}
