use num_complex::Complex64;
use serde::Serialize;

use super::admissibility::{check_def_cond, is_cusp, vertex_set, Vertex};
use super::matrix::Matrix2;
use super::point::Endpoint;
use crate::error::{Error, Result};

/// Constant attached to a vertex endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    #[serde(rename = "mu_1")]
    MuOne,
    #[serde(rename = "mu_inf")]
    MuInf,
    #[serde(rename = "nu_1")]
    NuOne,
    #[serde(rename = "nu_inf")]
    NuInf,
}

impl Symbol {
    fn mu(t0: Endpoint) -> Self {
        match t0 {
            Endpoint::One => Symbol::MuOne,
            Endpoint::Infinity => Symbol::MuInf,
        }
    }

    fn nu(x0: Endpoint) -> Self {
        match x0 {
            Endpoint::One => Symbol::NuOne,
            Endpoint::Infinity => Symbol::NuInf,
        }
    }

    /// Strict upper bound on the symbol imposed by a parameter point.
    fn bound(self, p: &Params) -> f64 {
        match self {
            Symbol::NuOne => p.u.re,
            Symbol::MuOne => p.s.re,
            Symbol::NuInf => p.y.re,
            Symbol::MuInf => p.w.re + 1.0,
        }
    }
}

/// Complex parameter point `(u, s, y, w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub u: Complex64,
    pub s: Complex64,
    pub y: Complex64,
    pub w: Complex64,
}

impl Params {
    pub fn new(u: Complex64, s: Complex64, y: Complex64, w: Complex64) -> Self {
        Self { u, s, y, w }
    }

    pub fn real(u: f64, s: f64, y: f64, w: f64) -> Self {
        let c = |v| Complex64::new(v, 0.0);
        Self::new(c(u), c(s), c(y), c(w))
    }
}

/// `μ_{T0} + ν_{X0} = sum` at one vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexConstraint {
    pub vertex: Vertex,
    pub cusp: bool,
    pub mu: Symbol,
    pub nu: Symbol,
    pub sum: u32,
}

/// Concrete values of the four constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Split {
    pub mu_1: f64,
    pub mu_inf: f64,
    pub nu_1: f64,
    pub nu_inf: f64,
}

impl Split {
    fn get_mut(&mut self, s: Symbol) -> &mut f64 {
        match s {
            Symbol::MuOne => &mut self.mu_1,
            Symbol::MuInf => &mut self.mu_inf,
            Symbol::NuOne => &mut self.nu_1,
            Symbol::NuInf => &mut self.nu_inf,
        }
    }
}

/// The half-plane region `Re u > ν₁, Re s > μ₁, Re y > ν_∞, Re w > μ_∞ − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfPlanes {
    pub re_u_gt: f64,
    pub re_s_gt: f64,
    pub re_y_gt: f64,
    pub re_w_gt: f64,
}

impl HalfPlanes {
    pub fn contains(&self, p: &Params) -> bool {
        p.u.re > self.re_u_gt && p.s.re > self.re_s_gt && p.y.re > self.re_y_gt && p.w.re > self.re_w_gt
    }
}

/// Vertices, cusp flags and the convergence region of `ξ_D(u,s;y,w;g)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainReport {
    pub matrix: String,
    pub vertices: Vec<VertexConstraint>,
    /// Symbols not attached to any vertex; they are fixed to 0.
    pub zero_symbols: Vec<Symbol>,
    pub default_split: Split,
    pub half_planes: HalfPlanes,
}

impl DomainReport {
    /// Whether some admissible choice of the constants puts `p` inside the region.
    pub fn admits(&self, p: &Params) -> bool {
        let free_ok = self.zero_symbols.iter().all(|s| s.bound(p) > 0.0);
        free_ok
            && self.vertices.iter().all(|v| {
                let (bm, bn) = (v.mu.bound(p), v.nu.bound(p));
                bm > 0.0 && bn > 0.0 && bm + bn > v.sum as f64
            })
    }
}

/// Builds the report; the default split puts each vertex's weight on its
/// `∞`-side symbol, preferring `μ` when both are `∞`-side.
pub fn domain_report(g: &Matrix2) -> Result<DomainReport> {
    let adm = check_def_cond(g);
    if let Some(w) = adm.witness {
        return Err(Error::Inadmissible { witness: w.to_string() });
    }
    let mut vertices = Vec::new();
    let mut split = Split { mu_1: 0.0, mu_inf: 0.0, nu_1: 0.0, nu_inf: 0.0 };
    let mut used = Vec::new();
    for v in vertex_set(g) {
        let cusp = is_cusp(g, v)?;
        let sum = if cusp { 2 } else { 1 };
        let (mu, nu) = (Symbol::mu(v.t0), Symbol::nu(v.x0));
        let target = if v.t0 == Endpoint::Infinity || v.x0 != Endpoint::Infinity { mu } else { nu };
        *split.get_mut(target) = sum as f64;
        used.extend([mu, nu]);
        vertices.push(VertexConstraint { vertex: v, cusp, mu, nu, sum });
    }
    let zero_symbols = [Symbol::MuOne, Symbol::MuInf, Symbol::NuOne, Symbol::NuInf]
        .into_iter()
        .filter(|s| !used.contains(s))
        .collect();
    let half_planes = HalfPlanes {
        re_u_gt: split.nu_1,
        re_s_gt: split.mu_1,
        re_y_gt: split.nu_inf,
        re_w_gt: split.mu_inf - 1.0,
    };
    Ok(DomainReport {
        matrix: g.to_string(),
        vertices,
        zero_symbols,
        default_split: split,
        half_planes,
    })
}
