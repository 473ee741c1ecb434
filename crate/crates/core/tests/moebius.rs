use akzeta::exact::{ratio, GaussianRational};
use akzeta::moebius::{check_def_cond, is_cusp, vertex_set, Endpoint, Matrix2, RiemannPoint, Vertex};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::new(ratio(a, b), ratio(c, d)))
}

fn matrix() -> impl Strategy<Value = Matrix2> {
    (gauss(), gauss(), gauss(), gauss()).prop_filter_map("singular", |(a, b, c, d)| Matrix2::new(a, b, c, d).ok())
}

fn point() -> impl Strategy<Value = RiemannPoint> {
    prop_oneof![
        1 => Just(RiemannPoint::infinity()),
        9 => gauss().prop_map(RiemannPoint::finite),
    ]
}

fn corpus() -> Vec<Matrix2> {
    ["-1,1;0,1", "1,-1;1,0", "-1,3;0,1", "-1,-2;0,1", "-1,i;0,1", "1,i;0,1", "0,1;1,0", "2,1;1,1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn action_round_trip(g in matrix(), z in point()) {
        prop_assert_eq!(g.act(&g.inverse().act(&z)), z.clone());
        prop_assert_eq!(g.inverse().act(&g.act(&z)), z);
    }

    #[test]
    fn automorphy_cocycles(g in matrix(), h in matrix(), z in gauss()) {
        let hz = h.act(&RiemannPoint::finite(z.clone()));
        prop_assume!(!hz.is_infinity());
        let hz = hz.value().unwrap();
        let gh = g.mul(&h);
        prop_assert_eq!(gh.j_d(&z), g.j_d(&hz) * h.j_d(&z));
        prop_assert_eq!(gh.j_n(&z), g.j_n(&hz) * h.j_d(&z));
    }

    #[test]
    fn cusp_flag_is_scale_invariant(alpha in gauss()) {
        prop_assume!(!num_traits::Zero::is_zero(&alpha));
        for g in corpus().into_iter().filter(|g| check_def_cond(g).admissible) {
            let scaled = g.scale(&alpha).unwrap();
            for v in vertex_set(&g) {
                prop_assert_eq!(is_cusp(&g, v).unwrap(), is_cusp(&scaled, v).unwrap());
            }
        }
    }
}

#[test]
fn vertices_match_brute_force() {
    let ends = [Endpoint::One, Endpoint::Infinity];
    for g in corpus().into_iter().filter(|g| check_def_cond(g).admissible) {
        let mut brute: Vec<Vertex> = ends
            .iter()
            .flat_map(|&t0| ends.iter().map(move |&x0| Vertex { t0, x0 }))
            .filter(|v| g.act(&v.t0.point()) == v.x0.point())
            .collect();
        let mut got = vertex_set(&g);
        brute.sort();
        got.sort();
        assert_eq!(got, brute, "{g}");
    }
}

#[test]
fn classifier_verdicts() {
    let m = |s: &str| -> Matrix2 { s.parse().unwrap() };
    let inf = Vertex { t0: Endpoint::Infinity, x0: Endpoint::Infinity };
    assert!(!is_cusp(&m("-1,1;0,1"), inf).unwrap());
    assert!(!is_cusp(&m("1,-1;1,0"), Vertex { t0: Endpoint::Infinity, x0: Endpoint::One }).unwrap());
    assert!(is_cusp(&m("1,i;0,1"), inf).unwrap());
    let adm = check_def_cond(&m("1,1;0,1"));
    assert!(!adm.admissible);
    assert_eq!(adm.witness.unwrap().to_string(), "2");
}
