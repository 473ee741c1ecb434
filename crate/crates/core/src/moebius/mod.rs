//! `GL₂(ℂ)` acting on the Riemann sphere: automorphy factors, the
//! admissibility test for `g([1,∞])`, vertices, cusps and the convergence
//! region of the associated zeta-function.

mod admissibility;
mod domain;
mod matrix;
mod point;

pub use admissibility::{check_def_cond, is_cusp, require_admissible, vertex_set, Admissibility, RealPoint, Vertex};
pub use domain::{domain_report, DomainReport, HalfPlanes, Params, Split, Symbol, VertexConstraint};
pub use matrix::{ComplexMatrix, Matrix2};
pub use point::{Endpoint, RiemannPoint};
