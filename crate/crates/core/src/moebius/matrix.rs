use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;

use super::point::RiemannPoint;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;

/// Invertible 2×2 matrix `(a b; c d)` with exact Gaussian-rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
}

impl Matrix2 {
    pub fn new(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        d: GaussianRational,
    ) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    /// Integer entries; panics on a singular matrix.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into()).expect("singular matrix")
    }

    /// `(−1 1; 0 1)`: `gT = 1 − T`.
    pub fn eta() -> Self {
        Self::from_ints(-1, 1, 0, 1)
    }

    /// `(1 −1; 1 0)`: `gT = 1 − 1/T`.
    pub fn xi() -> Self {
        Self::from_ints(1, -1, 1, 0)
    }

    /// `(−1 α; 0 1)`: `gT = α − T`.
    pub fn alpha(alpha: GaussianRational) -> Self {
        Self::new((-1).into(), alpha, 0.into(), 1.into()).expect("det is -1")
    }

    /// `(−1 1; 0 d)`, the normal form with `g1 = 0` and `g∞ = ∞`.
    pub fn h_d(d: GaussianRational) -> Result<Self> {
        Self::new((-1).into(), 1.into(), 0.into(), d)
    }

    /// `(1 −1; c 0)`, the normal form with `g1 = 0` and `g0 = ∞`.
    pub fn h_c_prime(c: GaussianRational) -> Result<Self> {
        Self::new(1.into(), (-1).into(), c, 0.into())
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> GaussianRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        let inv_det = self.det().inv().expect("invertible by construction");
        Self {
            a: &self.d * &inv_det,
            b: -(&self.b * &inv_det),
            c: -(&self.c * &inv_det),
            d: &self.a * &inv_det,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn scale(&self, k: &GaussianRational) -> Result<Self> {
        Self::new(&self.a * k, &self.b * k, &self.c * k, &self.d * k)
    }

    /// Möbius action on the Riemann sphere.
    pub fn act(&self, z: &RiemannPoint) -> RiemannPoint {
        let (p, q) = z.pair();
        RiemannPoint::new(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
            .expect("invertible matrix maps nonzero pairs to nonzero pairs")
    }

    /// `j_D(g, z) = cz + d`.
    pub fn j_d(&self, z: &GaussianRational) -> GaussianRational {
        &self.c * z + &self.d
    }

    /// `j_N(g, z) = az + b`.
    pub fn j_n(&self, z: &GaussianRational) -> GaussianRational {
        &self.a * z + &self.b
    }

    pub fn image_of_one(&self) -> RiemannPoint {
        self.act(&RiemannPoint::one())
    }

    pub fn image_of_infinity(&self) -> RiemannPoint {
        self.act(&RiemannPoint::infinity())
    }

    /// True when `g1 = 1`, where the generating denominators lose their unit term.
    pub fn fixes_one(&self) -> bool {
        self.image_of_one() == RiemannPoint::one()
    }

    pub fn entries(&self) -> [&GaussianRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            a: self.a.to_complex(),
            b: self.b.to_complex(),
            c: self.c.to_complex(),
            d: self.d.to_complex(),
        }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `"a,b;c,d"`.
impl FromStr for Matrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        let entries: Vec<&str> = rows.iter().flat_map(|r| r.split(',')).collect();
        if rows.len() != 2 || entries.len() != 4 {
            return Err(Error::Parse(format!("expected \"a,b;c,d\", got {s:?}")));
        }
        let parsed = entries
            .iter()
            .map(|e| e.parse::<GaussianRational>())
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [GaussianRational; 4] = parsed.try_into().expect("four entries");
        Self::new(a, b, c, d)
    }
}

/// Floating-point copy of a matrix for the numeric layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl ComplexMatrix {
    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn j_d(&self, z: Complex64) -> Complex64 {
        self.c * z + self.d
    }

    pub fn j_n(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    /// `gz` for finite `z`; `None` when `z` is the pole of `g`.
    pub fn act(&self, z: Complex64) -> Option<Complex64> {
        let den = self.j_d(z);
        if den == Complex64::zero() {
            None
        } else {
            Some(self.j_n(z) / den)
        }
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }
}
