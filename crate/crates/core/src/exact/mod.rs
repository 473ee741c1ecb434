//! Exact arithmetic: Gaussian rationals, polynomials in `y` and `w`, and
//! truncated power series over them.

mod coeff;
mod gaussian;
mod poly;
mod series;

pub use coeff::{binomial, factorial, rat, ratio, rational_pow, rational_to_f64, Coefficient};
pub use gaussian::{parse_rational, GaussianRational};
pub use poly::{PolyYW, Var};
pub use series::{SeriesVar, TruncSeries1, TruncSeries2};
