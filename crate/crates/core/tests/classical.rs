use akzeta::classical::{
    bernoulli_numbers, poly_bernoulli_b, poly_bernoulli_c, poly_bernoulli_poly, poly_bernoulli_poly_at, stirling1,
    stirling2,
};
use akzeta::exact::{rat, GaussianRational, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[test]
fn stirling_recurrences() {
    for m in 1..=12 {
        for n in 1..=12 {
            assert_eq!(stirling2(m, n), BigInt::from(n) * stirling2(m - 1, n) + stirling2(m - 1, n - 1));
        }
    }
    for n in 0..12 {
        for m in 1..=12 {
            assert_eq!(stirling1(n + 1, m), stirling1(n, m - 1) + BigInt::from(n) * stirling1(n, m));
        }
    }
}

#[test]
fn dualities_on_full_grid() {
    let b: Vec<_> = (0..=10).map(|k| poly_bernoulli_b(10, -k)).collect();
    let c: Vec<_> = (0..=11).map(|k| poly_bernoulli_c(11, -k)).collect();
    for k in 0..=10 {
        for m in 0..=10 {
            assert_eq!(b[k][m], b[m][k], "B duality at ({k}, {m})");
            assert_eq!(c[k + 1][m], c[m + 1][k], "C duality at ({k}, {m})");
        }
    }
}

/// Classical Bernoulli polynomials from `B_0 = 1`, `B_m' = m B_{m−1}` and
/// `∫_0^1 B_m = 0`, as coefficient vectors.
fn bernoulli_polys(max: usize) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![BigRational::one()]];
    for m in 1..=max {
        let prev = &out[m - 1];
        let mut p = vec![BigRational::zero()];
        for (j, c) in prev.iter().enumerate() {
            p.push(c * rat(m as i64) / rat(j as i64 + 1));
        }
        let integral: BigRational = p.iter().enumerate().map(|(j, c)| c / rat(j as i64 + 1)).sum();
        p[0] = -integral;
        out.push(p);
    }
    out
}

#[test]
fn order_one_polynomials_are_signed_bernoulli_polynomials() {
    for (m, classical) in bernoulli_polys(8).into_iter().enumerate() {
        let p = poly_bernoulli_poly(m, 1);
        for (j, c) in classical.iter().enumerate() {
            let expected = if m % 2 == 0 { c.clone() } else { -c.clone() };
            assert_eq!(p.coefficient(0, j as u32), GaussianRational::real(expected), "m = {m}, w^{j}");
        }
        assert!(p.degree(Var::Y).unwrap_or(0) == 0);
    }
}

#[test]
fn endpoints_give_both_kinds() {
    for k in -4..=4 {
        let b = poly_bernoulli_b(8, k);
        let c = poly_bernoulli_c(8, k);
        for m in 0..=8 {
            assert_eq!(poly_bernoulli_poly_at(m, k, &rat(0)), b[m]);
            assert_eq!(poly_bernoulli_poly_at(m, k, &rat(1)), c[m]);
        }
    }
    let bern = bernoulli_numbers(4);
    assert_eq!(bern[1], BigRational::new((-1).into(), 2.into()));
    assert_eq!(poly_bernoulli_b(1, 1)[1], BigRational::new(1.into(), 2.into()));
}
