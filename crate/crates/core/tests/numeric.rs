use akzeta::exact::GaussianRational;
use akzeta::gl2::bigen_series;
use akzeta::moebius::{Matrix2, Params};
use akzeta::numeric::{
    difference_residual, duality_residual, xi_d_at_neg_int, xi_d_hankel, xi_d_numeric, QuadratureConfig,
    ZetaMethod,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn corpus() -> Vec<(&'static str, Matrix2)> {
    vec![
        ("eta", Matrix2::eta()),
        ("xi", Matrix2::xi()),
        ("alpha-3", Matrix2::alpha(GaussianRational::from_int(3))),
    ]
}

#[test]
fn circle_matches_exact_grid() {
    let cfg = QuadratureConfig::default();
    let points = [("1", "0"), ("1/2", "1/3"), ("2", "-1/4")];
    for (name, g) in corpus() {
        let grid = bigen_series(&g, 5, 5).unwrap();
        for (ys, ws) in points {
            let (y, w): (GaussianRational, GaussianRational) = (ys.parse().unwrap(), ws.parse().unwrap());
            for m in 0..=5 {
                for l in 0..=5 {
                    let exact = grid.value(m, l, &y, &w).to_complex();
                    let v = xi_d_at_neg_int(&g, c(-(l as f64)), m, y.to_complex(), w.to_complex(), &cfg).unwrap();
                    let rel = (v.value - exact).norm() / exact.norm().max(1.0);
                    assert!(rel < 1e-6, "{name} m={m} l={l} y={ys} w={ws}: {v:?} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn hankel_matches_direct_at_two_and_a_half() {
    let cfg = QuadratureConfig::default();
    for (g, p) in [
        (Matrix2::eta(), Params::real(1.5, 2.5, 1.0, 0.0)),
        (Matrix2::xi(), Params::real(2.0, 2.5, 1.0, 0.0)),
        (Matrix2::xi(), Params::real(1.0, 2.5, 0.7, 0.4)),
    ] {
        let a = xi_d_numeric(&g, p, &cfg).unwrap();
        let b = xi_d_hankel(&g, p, &cfg).unwrap();
        assert!((a.value - b.value).norm() < 1e-7, "{g}: {a:?} vs {b:?}");
    }
}

#[test]
fn refinement_stays_within_reported_error() {
    let coarse = QuadratureConfig::default();
    let fine = QuadratureConfig { abs_tol: coarse.abs_tol / 2.0, rel_tol: coarse.rel_tol / 2.0, ..coarse };
    for (g, p) in [
        (Matrix2::eta(), Params::real(2.5, 1.5, 1.0, 0.0)),
        (Matrix2::xi(), Params::real(1.0, 2.0, 1.0, 0.0)),
        (Matrix2::xi(), Params::real(1.3, 1.7, 0.8, 0.6)),
    ] {
        let a = xi_d_numeric(&g, p, &coarse).unwrap();
        let b = xi_d_numeric(&g, p, &fine).unwrap();
        assert!((a.value - b.value).norm() <= a.est_error.max(1e-14), "{a:?} {b:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn difference_relation_on_xi(u in 1.2f64..3.0, s in 1.2f64..3.0, y in 0.6f64..2.0, w in 1.1f64..2.0) {
        let r = difference_residual(&Matrix2::xi(), Params::real(u, s, y, w), ZetaMethod::Integral, &QuadratureConfig::default()).unwrap();
        prop_assert!(r.residual < 10.0 * r.est_error.max(1e-14), "{:?}", r);
    }

    #[test]
    fn duality_on_eta(u in 1.2f64..3.0, s in 1.2f64..3.0, y in 1.1f64..2.0, w in 1.1f64..2.0) {
        let r = duality_residual(&Matrix2::eta(), Params::real(u, s, y, w), ZetaMethod::Integral, &QuadratureConfig::default()).unwrap();
        prop_assert!(r.residual < 10.0 * r.est_error.max(1e-14), "{:?}", r);
    }
}
