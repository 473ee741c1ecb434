//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use akzeta::exact::GaussianRational;
use akzeta::gl2::bigen_series;
use akzeta::harness::{run_catalog, CatalogConfig, IdentityCase};
use akzeta::moebius::{check_def_cond, is_cusp, Endpoint, Matrix2, Vertex};

struct Outcome {
    ok: bool,
    note: String,
}

fn catalog(ids: &[&str]) -> Vec<IdentityCase> {
    ids.iter()
        .flat_map(|id| run_catalog(&CatalogConfig { case: Some((*id).into()), ..CatalogConfig::default() }).cases)
        .collect()
}

/// Passes iff every expected id produced at least one case and all cases passed.
fn all_pass(ids: &[&str]) -> Outcome {
    let cases = catalog(ids);
    let failing: Vec<String> = cases.iter().filter(|c| !c.passed()).map(|c| format!("{} {:?}", c.id, c.params)).collect();
    let missing: Vec<&str> =
        ids.iter().copied().filter(|id| !cases.iter().any(|c| c.id == *id || c.id.starts_with(&format!("{id}-")))).collect();
    let ok = failing.is_empty() && missing.is_empty() && !cases.is_empty();
    let note = if ok {
        format!("{} cases", cases.len())
    } else {
        format!("failing: {failing:?}; missing: {missing:?}")
    };
    Outcome { ok, note }
}

fn gauss(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn alpha_examples() -> Outcome {
    let (one, zero) = (gauss("1"), gauss("0"));
    let mut bad = Vec::new();
    for (alpha, expected) in [("3", "242"), ("-2", "-1/512"), ("i", "-4/125-22/125i")] {
        let grid = bigen_series(&Matrix2::alpha(gauss(alpha)), 3, 3).unwrap();
        let (a, b) = (grid.value(2, 3, &one, &zero), grid.value(3, 2, &one, &zero));
        if a != gauss(expected) || b != gauss(expected) {
            bad.push(format!("alpha={alpha}: {a}, {b}"));
        }
    }
    Outcome { ok: bad.is_empty(), note: if bad.is_empty() { "3 values".into() } else { bad.join("; ") } }
}

fn classifier() -> Outcome {
    let m = |s: &str| -> Matrix2 { s.parse().unwrap() };
    let v = |t0, x0| Vertex { t0, x0 };
    let checks = [
        ("g_eta vertex inf non-cusp", is_cusp(&m("-1,1;0,1"), v(Endpoint::Infinity, Endpoint::Infinity)).ok() == Some(false)),
        ("g_xi vertex 1 non-cusp", is_cusp(&m("1,-1;1,0"), v(Endpoint::Infinity, Endpoint::One)).ok() == Some(false)),
        ("(1 i; 0 1) vertex inf cusp", is_cusp(&m("1,i;0,1"), v(Endpoint::Infinity, Endpoint::Infinity)).ok() == Some(true)),
        ("(1 1; 0 1) inadmissible with interior witness", {
            let a = check_def_cond(&m("1,1;0,1"));
            !a.admissible && a.witness.is_some_and(|w| w.approx() > 1.0 && w.approx().is_finite())
        }),
    ];
    let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome { ok: bad.is_empty(), note: if bad.is_empty() { "4 verdicts".into() } else { bad.join("; ") } }
}

fn main() {
    type Check = Box<dyn Fn() -> Outcome>;
    let criteria: Vec<(u32, &str, Option<Duration>, Check)> = vec![
        (1, "alpha examples 242, -1/512, -4/125-22/125i exact", Some(Duration::from_secs(1)), Box::new(alpha_examples)),
        (
            2,
            "duality suites exact (B/C k,m<=10; KST n<=4; Stirling families n<=2 on corpus)",
            Some(Duration::from_secs(60)),
            Box::new(|| all_pass(&["b-duality", "c-duality", "kst-polynomial-duality", "stirling-duality"])),
        ),
        (
            3,
            "difference relation symbolic l,m<=8 and B = C + C relation m<=12, |k|<=6",
            None,
            Box::new(|| all_pass(&["difference-relation", "b-c-relation"])),
        ),
        (4, "oracle routes agree exactly, m,l<=8", None, Box::new(|| all_pass(&["oracle-agreement"]))),
        (
            5,
            "inversion and scaling transforms exact",
            None,
            Box::new(|| all_pass(&["inversion-transform", "scaling-transform"])),
        ),
        (6, "geometry classifier verdicts", None, Box::new(classifier)),
        (
            7,
            "numeric: 2 zeta(3) < 1e-8, eta symmetry < 1e-8, relations < 10 x est_error at 20 points",
            Some(Duration::from_secs(120)),
            Box::new(|| {
                all_pass(&[
                    "xi-one-two-twice-zeta-three",
                    "eta-symmetry",
                    "difference-relation-numeric",
                    "duality-numeric",
                ])
            }),
        ),
        (
            8,
            "contour bridge: circle vs exact grid rel 1e-6, Hankel vs direct 1e-7",
            Some(Duration::from_secs(120)),
            Box::new(|| all_pass(&["circle-exact-agreement", "hankel-direct-agreement"])),
        ),
        (
            9,
            "property suites for non-reproducible content (refinement, bridges, full catalog)",
            None,
            Box::new(|| {
                let mut o = all_pass(&["refinement-stability", "eta-tilde-xi-recursion-numeric", "tilde-xi-duality-numeric"]);
                let full = run_catalog(&CatalogConfig::default());
                o.ok &= full.all_passed();
                o.note = format!("{}; full catalog {}/{} pass", o.note, full.summary.passed, full.summary.total);
                o
            }),
        ),
    ];

    let mut failures = 0;
    for (n, title, limit, check) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                outcome.ok = false;
                outcome.note = format!("{} (over the {:?} limit)", outcome.note, limit);
            }
        }
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status}  {title}  [{:.2}s] {}", elapsed.as_secs_f64(), outcome.note);
        failures += usize::from(!outcome.ok);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
