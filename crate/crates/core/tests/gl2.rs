use akzeta::exact::{GaussianRational, Var};
use akzeta::gl2::{bigen_series, unigen_series, YSpec};
use akzeta::moebius::Matrix2;

fn corpus() -> Vec<Matrix2> {
    ["-1,1;0,1", "1,-1;1,0", "-1,3;0,1", "-1,-2;0,1", "-1,i;0,1"].iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn bivariate_and_univariate_routes_agree() {
    for g in corpus() {
        let grid = bigen_series(&g, 8, 8).unwrap();
        for l in 0..=8 {
            let uni = unigen_series(&g, -(l as i64), &YSpec::Symbolic, 8).unwrap();
            for m in 0..=8 {
                assert_eq!(&uni[m], grid.get(m, l), "{g} m={m} l={l}");
            }
        }
    }
}

#[test]
fn duality_seed_identity() {
    let minus_one = GaussianRational::from_int(-1);
    for g0 in corpus() {
        for g in [g0.clone(), g0.inverse()] {
            let h = g.inverse();
            let (gg, hh) = (bigen_series(&g, 6, 6).unwrap(), bigen_series(&h, 6, 6).unwrap());
            let factor = -g.det().inv().unwrap();
            for k in 0..=6 {
                for m in 0..=6 {
                    let lhs = gg.get(k, m).shift(Var::W, &minus_one);
                    let rhs = hh.get(m, k).shift(Var::W, &minus_one).swap().scale(&factor);
                    assert_eq!(lhs, rhs, "{g} k={k} m={m}");
                }
            }
        }
    }
}

#[test]
fn degrees_bounded_by_orders() {
    for g in corpus() {
        let grid = bigen_series(&g, 8, 8).unwrap();
        for m in 0..=8 {
            for l in 0..=8 {
                let p = grid.get(m, l);
                assert!(p.degree(Var::W).is_none_or(|d| d as usize <= m));
                assert!(p.degree(Var::Y).is_none_or(|d| d as usize <= l));
            }
        }
    }
}
