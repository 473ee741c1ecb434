use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::GaussianRational;

/// Point `(p : q)` of the Riemann sphere; `∞ = (1 : 0)`.
#[derive(Clone, Debug)]
pub struct RiemannPoint {
    p: GaussianRational,
    q: GaussianRational,
}

impl RiemannPoint {
    pub fn new(p: GaussianRational, q: GaussianRational) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::InvalidArgument("(0 : 0) is not a point".into()));
        }
        Ok(Self { p, q })
    }

    pub fn finite(z: GaussianRational) -> Self {
        Self { p: z, q: GaussianRational::one() }
    }

    pub fn infinity() -> Self {
        Self { p: GaussianRational::one(), q: GaussianRational::zero() }
    }

    pub fn one() -> Self {
        Self::finite(GaussianRational::one())
    }

    pub fn pair(&self) -> (&GaussianRational, &GaussianRational) {
        (&self.p, &self.q)
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// Affine coordinate, `None` at `∞`.
    pub fn value(&self) -> Option<GaussianRational> {
        (!self.q.is_zero()).then(|| &self.p / &self.q)
    }

    /// The point as one of the two arc endpoints `1`, `∞`, if it is one.
    pub fn as_endpoint(&self) -> Option<Endpoint> {
        if self.is_infinity() {
            Some(Endpoint::Infinity)
        } else if self.p == self.q {
            Some(Endpoint::One)
        } else {
            None
        }
    }
}

impl PartialEq for RiemannPoint {
    fn eq(&self, other: &Self) -> bool {
        &self.p * &other.q == &other.p * &self.q
    }
}

impl Eq for RiemannPoint {}

impl fmt::Display for RiemannPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "inf"),
        }
    }
}

/// Endpoint of the arc `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Endpoint {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl Endpoint {
    pub fn point(self) -> RiemannPoint {
        match self {
            Endpoint::One => RiemannPoint::one(),
            Endpoint::Infinity => RiemannPoint::infinity(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::One => write!(f, "1"),
            Endpoint::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_equality() {
        let a = RiemannPoint::new(2.into(), 4.into()).unwrap();
        let b = RiemannPoint::finite("1/2".parse().unwrap());
        assert_eq!(a, b);
        let inf = RiemannPoint::new((-3).into(), 0.into()).unwrap();
        assert_eq!(inf, RiemannPoint::infinity());
        assert_eq!(inf.as_endpoint(), Some(Endpoint::Infinity));
        assert_eq!(RiemannPoint::new(5.into(), 5.into()).unwrap().as_endpoint(), Some(Endpoint::One));
        assert!(RiemannPoint::new(0.into(), 0.into()).is_err());
    }
}
