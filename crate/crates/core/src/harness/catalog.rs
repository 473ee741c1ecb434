use rayon::prelude::*;
use serde::Serialize;

use super::exact::{verify_alpha_example, verify_classical_duality};
use super::numeric::NUMERIC_IDS;
use super::{
    numeric_suite, resolve_dual_c_l1, verify_b_c_relation, verify_bridges, verify_c_duals, verify_difference,
    verify_dual_alpha, verify_dual_family, verify_dual_kst, DualVariant, GridCache, IdentityCase, Mode,
    NumericSuiteConfig, ResolverReport, Status,
};
use crate::exact::{GaussianRational, PolyYW};
use crate::gl2::{
    bigen_series, check_inversion, check_scaling, closed_form_hcprime, closed_form_hd, unigen_series, xi2k_exact,
    YSpec,
};
use crate::moebius::Matrix2;
use crate::numeric::QuadratureConfig;
use crate::params;

/// What to run and how large the grids are.
#[derive(Clone, Debug)]
pub struct CatalogConfig {
    /// Only cases whose id equals this (or starts with it followed by `-`).
    pub case: Option<String>,
    /// Matrices for the matrix-generic exact families; `None` uses the
    /// built-in corpus.
    pub matrices: Option<Vec<Matrix2>>,
    /// Caps every grid bound.
    pub max_order: Option<usize>,
    pub include_numeric: bool,
    pub numeric: NumericSuiteConfig,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        Self { case: None, matrices: None, max_order: None, include_numeric: true, numeric: NumericSuiteConfig::default() }
    }
}

impl CatalogConfig {
    /// Applies `AKZETA_TOL` (relative quadrature tolerance) when set.
    pub fn with_env(mut self) -> crate::Result<Self> {
        if let Ok(v) = std::env::var("AKZETA_TOL") {
            let tol: f64 = v
                .trim()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("AKZETA_TOL={v:?} is not a number")))?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(crate::Error::InvalidArgument(format!("AKZETA_TOL must be positive, got {tol}")));
            }
            self.numeric.quadrature = QuadratureConfig { rel_tol: tol, ..self.numeric.quadrature };
        }
        Ok(self)
    }

    fn cap(&self, n: usize) -> usize {
        self.max_order.map_or(n, |c| c.min(n))
    }

    fn selects(&self, id: &str) -> bool {
        match &self.case {
            None => true,
            Some(c) => id == c || id.strip_prefix(c.as_str()).is_some_and(|r| r.starts_with('-')),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub unresolved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub summary: Summary,
    pub cases: Vec<IdentityCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_c_l1_resolution: Option<ResolverReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

fn gauss(s: &str) -> GaussianRational {
    s.parse().expect("literal")
}

fn corpus() -> Vec<Matrix2> {
    vec![
        Matrix2::eta(),
        Matrix2::xi(),
        Matrix2::alpha(gauss("3")),
        Matrix2::alpha(gauss("-2")),
        Matrix2::alpha(gauss("i")),
    ]
}

fn g_one_is_zero(g: &Matrix2) -> bool {
    use num_traits::Zero;
    (&g.a + &g.b).is_zero() && !(&g.c + &g.d).is_zero()
}

fn g_one_is_infinite(g: &Matrix2) -> bool {
    use num_traits::Zero;
    (&g.c + &g.d).is_zero()
}

/// One unit of work: the ids it can produce and how to produce them.
struct Job<'a> {
    ids: Vec<&'static str>,
    run: Box<dyn Fn() -> Vec<IdentityCase> + Send + Sync + 'a>,
}

fn guard(id: &str, citation: &str, params: std::collections::BTreeMap<String, String>, r: crate::Result<IdentityCase>) -> IdentityCase {
    r.unwrap_or_else(|e| IdentityCase::errored(id, Mode::Exact, citation, params, &e))
}

/// Agreement of the four exact routes for `𝔹` on their common domain.
fn oracle_case(g: &Matrix2, n: usize) -> IdentityCase {
    let id = "oracle-agreement";
    let cite = "bivariate generating function = univariate expansion = closed double sums = finite ξ_(2,k) sum";
    let run = || -> crate::Result<IdentityCase> {
        let grid = bigen_series(g, n, n)?;
        let mut bad = Vec::new();
        let mut routes = vec!["bivariate"];
        if !g_one_is_infinite(g) {
            routes.push("univariate");
            for l in 0..=n {
                let series = unigen_series(g, -(l as i64), &YSpec::Symbolic, n)?;
                for (m, p) in series.iter().enumerate() {
                    if p != grid.get(m, l) {
                        bad.push(format!("univariate m={m} l={l}"));
                    }
                }
            }
        }
        let closed: Option<(&str, Box<dyn Fn(usize, i64) -> crate::Result<PolyYW>>)> =
            if g.a == gauss("-1") && g.b == gauss("1") && g.c == gauss("0") {
                let d = g.d.clone();
                Some(("closed h_d", Box::new(move |m, u| closed_form_hd(m, u, &YSpec::Symbolic, &d))))
            } else if g.a == gauss("1") && g.b == gauss("-1") && g.d == gauss("0") {
                let c = g.c.clone();
                Some(("closed h'_c", Box::new(move |m, u| closed_form_hcprime(m, u, &YSpec::Symbolic, &c))))
            } else {
                None
            };
        if let Some((name, f)) = closed {
            routes.push(name);
            for m in 0..=n {
                for l in 0..=n {
                    if &f(m, -(l as i64))? != grid.get(m, l) {
                        bad.push(format!("{name} m={m} l={l}"));
                    }
                }
            }
        }
        if g_one_is_zero(g) {
            routes.push("xi2k");
            for m in 0..=n {
                for l in 0..=n {
                    if &xi2k_exact(g, m + 1, -(l as i64), m, &YSpec::Symbolic)? != grid.get(m, l) {
                        bad.push(format!("xi2k m={m} l={l}"));
                    }
                }
            }
        }
        let case = IdentityCase::exact(id, cite, params!("matrix" => g, "max_order" => n, "routes" => routes.join("+")), bad.is_empty());
        Ok(if bad.is_empty() { case } else { case.with_detail(bad.join("; ")) })
    };
    guard(id, cite, params!("matrix" => g), run())
}

fn exact_jobs<'a>(cfg: &'a CatalogConfig, cache: &'a GridCache, mats: &'a [Matrix2]) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();

    jobs.push(Job {
        ids: vec!["alpha-example-values"],
        run: Box::new(move || {
            [("3", "242"), ("-2", "-1/512"), ("i", "-4/125-22/125i")]
                .iter()
                .map(|(a, v)| {
                    guard("alpha-example-values", "", params!("alpha" => a), verify_alpha_example(cache, a, v))
                })
                .collect()
        }),
    });

    for second in [false, true] {
        let n = cfg.cap(10);
        jobs.push(Job {
            ids: vec![if second { "c-duality" } else { "b-duality" }],
            run: Box::new(move || {
                let parts: Vec<_> = (0..=n)
                    .flat_map(|k| (0..=n).map(move |m| (k, m)))
                    .map(|(k, m)| verify_classical_duality(second, k, m))
                    .collect();
                let first = &parts[0];
                vec![IdentityCase::combine(&first.id, &first.citation, params!("k" => format!("0..={n}"), "m" => format!("0..={n}")), &parts)]
            }),
        });
    }

    let n = cfg.cap(12);
    let kr = cfg.cap(6) as i64;
    jobs.push(Job {
        ids: vec!["b-c-relation"],
        run: Box::new(move || {
            let parts: Vec<_> = (0..=n)
                .flat_map(|m| (-kr..=kr).map(move |k| (m, k)))
                .map(|(m, k)| guard("b-c-relation", "", params!("m" => m, "k" => k), verify_b_c_relation(cache, m, k)))
                .collect();
            vec![IdentityCase::combine(
                "b-c-relation",
                &parts[0].citation,
                params!("m" => format!("0..={n}"), "k" => format!("{}..={kr}", -kr)),
                &parts,
            )]
        }),
    });

    for g in mats {
        for variant in DualVariant::ALL {
            for nn in 0..=cfg.cap(2) {
                let km = cfg.cap(5);
                jobs.push(Job {
                    ids: vec![variant.id()],
                    run: Box::new(move || {
                        let parts: Vec<_> = (0..=km)
                            .flat_map(|k| (0..=km).map(move |m| (k, m)))
                            .map(|(k, m)| {
                                guard(variant.id(), variant.citation(), params!("k" => k, "m" => m), verify_dual_family(cache, g, variant, nn, k, m))
                            })
                            .collect();
                        vec![IdentityCase::combine(
                            variant.id(),
                            variant.citation(),
                            params!("matrix" => g, "n" => nn, "k" => format!("0..={km}"), "m" => format!("0..={km}")),
                            &parts,
                        )]
                    }),
                });
            }
        }

        let lm = cfg.cap(8);
        jobs.push(Job {
            ids: vec!["difference-relation"],
            run: Box::new(move || {
                let mut parts: Vec<_> = (0..=lm)
                    .flat_map(|l| (0..=lm).map(move |m| (l, m)))
                    .map(|(l, m)| {
                        guard("difference-relation", "", params!("l" => l, "m" => m), verify_difference(cache, g, -(l as i64), m, &YSpec::Symbolic))
                    })
                    .collect();
                // Positive orders through the univariate route at fixed y.
                if g_one_is_zero(g) {
                    for y in ["1/2", "2", "1+i"] {
                        for u in 1..=3 {
                            for m in 0..=lm.min(6) {
                                let ys = YSpec::Value(gauss(y));
                                parts.push(guard(
                                    "difference-relation",
                                    "",
                                    params!("u" => u, "m" => m, "y" => y),
                                    verify_difference(cache, g, u, m, &ys),
                                ));
                            }
                        }
                    }
                }
                let cite = parts[0].citation.clone();
                vec![IdentityCase::combine("difference-relation", &cite, params!("matrix" => g, "max_order" => lm), &parts)]
            }),
        });

        let n = cfg.cap(8);
        jobs.push(Job {
            ids: vec!["inversion-transform"],
            run: Box::new(move || {
                let id = "inversion-transform";
                let cite = "𝔹_m^(u)(y,w;g·(0 1;1 0)) = (−1)^m 𝔹_m^(u)(y,−w−1;g)";
                vec![guard(
                    id,
                    cite,
                    params!("matrix" => g),
                    check_inversion(g, n, n).map(|ok| IdentityCase::exact(id, cite, params!("matrix" => g, "max_order" => n), ok)),
                )]
            }),
        });
        jobs.push(Job {
            ids: vec!["scaling-transform"],
            run: Box::new(move || {
                let id = "scaling-transform";
                let cite = "𝔹_m^(u)(y,w;αg) = α^(−1) 𝔹_m^(u)(y,w;g)";
                ["2", "-1", "i"]
                    .iter()
                    .map(|a| {
                        guard(
                            id,
                            cite,
                            params!("matrix" => g, "alpha" => a),
                            check_scaling(g, &gauss(a), n, n)
                                .map(|ok| IdentityCase::exact(id, cite, params!("matrix" => g, "alpha" => a, "max_order" => n), ok)),
                        )
                    })
                    .collect()
            }),
        });
        jobs.push(Job { ids: vec!["oracle-agreement"], run: Box::new(move || vec![oracle_case(g, n)]) });
    }

    for nn in 0..=cfg.cap(4) {
        let km = cfg.cap(8);
        jobs.push(Job {
            ids: vec!["kst-polynomial-duality"],
            run: Box::new(move || {
                let parts: Vec<_> = (0..=km).flat_map(|k| (0..=km).map(move |m| verify_dual_kst(nn, k, m))).collect();
                vec![IdentityCase::combine(
                    "kst-polynomial-duality",
                    &parts[0].citation,
                    params!("n" => nn, "k" => format!("0..={km}"), "m" => format!("0..={km}")),
                    &parts,
                )]
            }),
        });
    }

    for alpha in ["3", "-2", "i", "1/2+i"] {
        for nn in 0..=cfg.cap(3) {
            let km = cfg.cap(5);
            jobs.push(Job {
                ids: vec!["alpha-polynomial-duality"],
                run: Box::new(move || {
                    let a = gauss(alpha);
                    let parts: Vec<_> = (0..=km)
                        .flat_map(|k| (0..=km).map(move |m| (k, m)))
                        .map(|(k, m)| guard("alpha-polynomial-duality", "", params!("k" => k, "m" => m), verify_dual_alpha(cache, &a, nn, k, m)))
                        .collect();
                    vec![IdentityCase::combine(
                        "alpha-polynomial-duality",
                        &parts[0].citation,
                        params!("alpha" => alpha, "n" => nn, "k" => format!("0..={km}"), "m" => format!("0..={km}")),
                        &parts,
                    )]
                }),
            });
        }
    }

    let km = cfg.cap(6);
    jobs.push(Job {
        ids: vec!["c-duality-direct", "c-duality-binomial-l0", "c-duality-binomial-l1"],
        run: Box::new(move || {
            let mut by_id: std::collections::BTreeMap<String, Vec<IdentityCase>> = Default::default();
            for l in 0..=2 {
                for k in 0..=km {
                    for m in 0..=km {
                        match verify_c_duals(cache, l, k, m) {
                            Ok(cs) => {
                                for c in cs {
                                    by_id.entry(c.id.clone()).or_default().push(c);
                                }
                            }
                            Err(e) => by_id.entry("c-duality-direct".into()).or_default().push(IdentityCase::errored(
                                "c-duality-direct",
                                Mode::Exact,
                                "",
                                params!("l" => l, "k" => k, "m" => m),
                                &e,
                            )),
                        }
                    }
                }
            }
            by_id
                .into_iter()
                .map(|(id, parts)| {
                    let range = if id == "c-duality-direct" { "0" } else { "1" };
                    let mut p = params!("k" => format!("{range}..={km}"), "m" => format!("{range}..={km}"));
                    if id == "c-duality-direct" {
                        p.insert("l".into(), "0..=2".into());
                    }
                    IdentityCase::combine(&id, &parts[0].citation, p, &parts)
                })
                .collect()
        }),
    });

    let bm = cfg.cap(6);
    jobs.push(Job {
        ids: vec![
            "eta-special-values",
            "eta-origin-values",
            "xi-special-values",
            "xi-check-special-values",
            "tilde-xi-duality-at-integers",
            "xi-check-duality-at-integers",
            "eta-tilde-xi-recursion-at-integers",
            "eta-bridge-duality-l0",
            "eta-bridge-duality-l1",
            "eta-bridge-duality-l2",
        ],
        run: Box::new(move || {
            verify_bridges(cache, bm).unwrap_or_else(|e| {
                vec![IdentityCase::errored("eta-special-values", Mode::Exact, "", params!(), &e)]
            })
        }),
    });
    jobs
}

fn resolver_case(r: &ResolverReport) -> IdentityCase {
    let id = "c-duality-l1-resolution";
    let cite = "Σ_(j=1)^(k−1) C(k,j)C_(j−1)^(−m−1) = Σ_(j=0)^m C(m,j) C_(m−j) C_(j+1)^(−k)/(j+1), reading of C_(m−j) resolved by evaluation";
    let mut case = IdentityCase::exact(
        id,
        cite,
        params!("k" => format!("0..={}", r.k_max), "m" => format!("0..={}", r.m_max)),
        r.verdict.is_some() && r.bridge_holds.iter().all(|&b| b),
    );
    if r.verdict.is_none() {
        case.status = Status::Unresolved;
    }
    case.detail = Some(match &r.verdict {
        Some(v) => format!("holds for {v}"),
        None => "no candidate reading holds on any index range".into(),
    });
    case
}

/// Runs every selected case and returns a report sorted by id and params.
pub fn run_catalog(cfg: &CatalogConfig) -> Report {
    let cache = GridCache::new();
    let mats = cfg.matrices.clone().unwrap_or_else(corpus);
    let jobs = exact_jobs(cfg, &cache, &mats);
    let mut cases: Vec<IdentityCase> = jobs
        .par_iter()
        .filter(|j| j.ids.iter().any(|id| cfg.selects(id)))
        .flat_map_iter(|j| (j.run)())
        .filter(|c| cfg.selects(&c.id))
        .collect();

    let mut resolution = None;
    if cfg.selects("c-duality-l1-resolution") {
        let n = cfg.cap(8);
        match resolve_dual_c_l1(&cache, n, n) {
            Ok(r) => {
                cases.push(resolver_case(&r));
                resolution = Some(r);
            }
            Err(e) => cases.push(IdentityCase::errored("c-duality-l1-resolution", Mode::Exact, "", params!(), &e)),
        }
    }

    if cfg.include_numeric && NUMERIC_IDS.iter().any(|id| cfg.selects(id)) {
        let mut ncfg = cfg.numeric.clone();
        ncfg.max_order = cfg.cap(ncfg.max_order);
        if let Some(m) = &cfg.matrices {
            ncfg.matrices = m.clone();
            ncfg.circle_matrices = m.clone();
        }
        cases.extend(numeric_suite(&ncfg, &cache, &|id| cfg.selects(id)));
    }

    cases.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        total: cases.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        unresolved: count(Status::Unresolved),
    };
    Report { summary, cases, dual_c_l1_resolution: resolution }
}

/// Every id the catalog can emit.
pub fn catalog_ids() -> Vec<&'static str> {
    let cfg = CatalogConfig::default();
    let cache = GridCache::new();
    let mats = vec![Matrix2::eta()];
    let mut ids: Vec<&'static str> = exact_jobs(&cfg, &cache, &mats).into_iter().flat_map(|j| j.ids).collect();
    ids.push("c-duality-l1-resolution");
    ids.extend(NUMERIC_IDS);
    ids.sort_unstable();
    ids.dedup();
    ids
}
