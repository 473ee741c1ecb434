//! Machine verification of the identities satisfied by `𝔹_m^(u)(y,w;g)`
//! and `ξ_D`: exact checks through the polynomial layer, numeric checks
//! through the quadrature layer, and a catalog runner with JSON/CSV reports.

mod catalog;
mod exact;
mod numeric;
mod report;

use std::collections::BTreeMap;

use serde::Serialize;

pub use catalog::{catalog_ids, run_catalog, CatalogConfig, Report, Summary};
pub use exact::{
    resolve_dual_c_l1, verify_b_c_relation, verify_bridges, verify_c_duals, verify_difference,
    verify_dual_alpha, verify_dual_family, verify_dual_kst, CandidateOutcome, DualVariant, GridCache,
    ResolverReport,
};
pub use numeric::{numeric_suite, sample_certified_points, NumericSuiteConfig};
pub use report::{to_csv, to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unresolved,
}

/// Exact cases record whether the difference vanished identically; numeric
/// cases record the residual and the bound it was held to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Residual {
    ExactZero(bool),
    Float { value: f64, bound: f64 },
}

/// One verified statement together with its parameters and outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCase {
    pub id: String,
    pub mode: Mode,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub residual: Residual,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityCase {
    pub fn exact(id: &str, citation: &str, params: BTreeMap<String, String>, zero: bool) -> Self {
        Self {
            id: id.into(),
            mode: Mode::Exact,
            params,
            status: if zero { Status::Pass } else { Status::Fail },
            residual: Residual::ExactZero(zero),
            citation: citation.into(),
            detail: None,
        }
    }

    /// Passes iff `value < bound` (a NaN residual fails).
    pub fn numeric(id: &str, citation: &str, params: BTreeMap<String, String>, value: f64, bound: f64) -> Self {
        Self {
            id: id.into(),
            mode: Mode::Numeric,
            params,
            status: if value < bound { Status::Pass } else { Status::Fail },
            residual: Residual::Float { value, bound },
            citation: citation.into(),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds per-point cases into one: passes iff all do, and lists the
    /// failing points in `detail`.
    pub fn combine(id: &str, citation: &str, params: BTreeMap<String, String>, parts: &[IdentityCase]) -> Self {
        let failing: Vec<String> = parts
            .iter()
            .filter(|c| !c.passed())
            .map(|c| {
                let p: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                match &c.detail {
                    Some(d) => format!("[{}] {d}", p.join(" ")),
                    None => format!("[{}]", p.join(" ")),
                }
            })
            .collect();
        let mode = parts.first().map_or(Mode::Exact, |c| c.mode);
        let residual = match mode {
            Mode::Exact => Residual::ExactZero(failing.is_empty()),
            Mode::Numeric => {
                // Report the point closest to (or furthest past) its bound.
                let worst = parts
                    .iter()
                    .filter_map(|c| match c.residual {
                        Residual::Float { value, bound } => Some((value, bound)),
                        Residual::ExactZero(_) => None,
                    })
                    .max_by(|a, b| (a.0 / a.1).total_cmp(&(b.0 / b.1)))
                    .unwrap_or((0.0, 0.0));
                Residual::Float { value: worst.0, bound: worst.1 }
            }
        };
        let status = if parts.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if parts.iter().any(|c| c.status == Status::Unresolved) {
            Status::Unresolved
        } else {
            Status::Pass
        };
        let mut params = params;
        params.insert("points".into(), parts.len().to_string());
        Self {
            id: id.into(),
            mode,
            params,
            status,
            residual,
            citation: citation.into(),
            detail: (!failing.is_empty()).then(|| failing.join("; ")),
        }
    }

    /// A case that could not be evaluated.
    pub fn errored(id: &str, mode: Mode, citation: &str, params: BTreeMap<String, String>, err: &crate::Error) -> Self {
        Self {
            id: id.into(),
            mode,
            params,
            status: Status::Fail,
            residual: match mode {
                Mode::Exact => Residual::ExactZero(false),
                Mode::Numeric => Residual::Float { value: f64::NAN, bound: 0.0 },
            },
            citation: citation.into(),
            detail: Some(err.to_string()),
        }
    }
}

/// `BTreeMap` from `key => value` pairs.
#[macro_export]
#[doc(hidden)]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = ::std::collections::BTreeMap::<String, String>::new();
        $( m.insert($k.to_string(), $v.to_string()); )*
        m
    }};
}
