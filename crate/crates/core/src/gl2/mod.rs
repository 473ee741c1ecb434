//! Poly-Bernoulli polynomials `𝔹_m^(u)(y,w;g)` attached to a matrix `g`.
//!
//! Four independent exact routes are provided and used as each other's
//! oracles: the bivariate generating function, the univariate Lerch-series
//! expansion, the closed double sums for the normal forms `h_d`, `h'_c`, and
//! the finite `ξ_{2,k}` sum at a nonpositive integer `s`.

mod bigen;
mod closed;
mod transform;
mod unigen;
mod xi2k;

use num_traits::Zero;

pub use bigen::{bigen_series, GlPolyBernoulli};
pub use closed::{closed_form_hcprime, closed_form_hd};
pub use transform::{check_inversion, check_scaling, reflect_w};
pub use unigen::{phi_nonpositive, unigen_series};
pub use xi2k::xi2k_exact;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, PolyYW, Var};

/// The `y` argument: kept as a formal variable or fixed to a value.
#[derive(Clone, Debug, PartialEq)]
pub enum YSpec {
    Symbolic,
    Value(GaussianRational),
}

impl YSpec {
    /// `(y + n)^{−u}` as a polynomial (constant when `y` is fixed).
    pub(crate) fn power(&self, n: i64, u: i64) -> Result<PolyYW> {
        let shift = GaussianRational::from_int(n);
        match self {
            YSpec::Symbolic if u <= 0 => Ok(PolyYW::linear(Var::Y, &shift).pow((-u) as u32)),
            YSpec::Symbolic => Err(Error::Unsupported(
                "a positive order u needs a concrete y".into(),
            )),
            YSpec::Value(y) => {
                let base = y + &shift;
                if u > 0 && base.is_zero() {
                    return Err(Error::Pole(format!("y + {n} = 0 with u = {u}")));
                }
                Ok(PolyYW::constant(base.pow(-u).expect("nonzero base")))
            }
        }
    }

    /// Substitutes a fixed `y` into a polynomial built with symbolic `y`.
    pub(crate) fn apply(&self, p: PolyYW) -> PolyYW {
        match self {
            YSpec::Symbolic => p,
            YSpec::Value(y) => p.eval_var(Var::Y, y),
        }
    }
}

/// `g1 = (a + b)/(c + d)` as `(numerator, denominator)`.
pub(crate) fn g_one(g: &crate::moebius::Matrix2) -> (GaussianRational, GaussianRational) {
    (&g.a + &g.b, &g.c + &g.d)
}
