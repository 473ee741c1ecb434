use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{factorial, Coefficient};
use crate::error::{Error, Result};

/// Formal variable of a univariate series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesVar {
    T,
    X,
    Z,
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesVar::T => "t",
            SeriesVar::X => "x",
            SeriesVar::Z => "z",
        };
        write!(f, "{s}")
    }
}

/// Univariate power series truncated after the `var^order` term.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries1<C> {
    var: SeriesVar,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncSeries1<C> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(var: SeriesVar, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { var, coeffs }
    }

    pub fn from_fn(var: SeriesVar, order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self::new(var, (0..=order).map(f).collect())
    }

    pub fn zero(var: SeriesVar, order: usize) -> Self {
        Self::from_fn(var, order, |_| C::zero())
    }

    pub fn constant(var: SeriesVar, order: usize, c: C) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: SeriesVar, order: usize) -> Self {
        Self::constant(var, order, C::one())
    }

    /// `e^{coeff * var}` truncated at `order`: coefficients `coeff^n / n!`.
    pub fn exp_linear(coeff: &C, var: SeriesVar, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = C::one();
        for n in 0..=order {
            let inv_fact = BigRational::new(BigInt::from(1), factorial(n));
            coeffs.push(power.scaled_by(&inv_fact));
            power = power.times(coeff);
        }
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var.to_string(), other.var.to_string()));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: (self.order(), 0),
                right: (other.order(), 0),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j].accumulate(&a.times(b));
            }
        }
        Ok(Self::new(self.var, out))
    }

    /// Exact quotient; the divisor's constant term must be a unit.
    pub fn div(&self, den: &Self) -> Result<Self> {
        self.check(den)?;
        let inv0 = den.coeffs[0].unit_inverse().ok_or(Error::NonUnitConstant)?;
        let n = self.order();
        let mut q: Vec<C> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !den.coeffs[j].is_zero() {
                    acc = acc.minus(&den.coeffs[j].times(&q[k - j]));
                }
            }
            q.push(acc.times(&inv0));
        }
        Ok(Self::new(self.var, q))
    }

    /// Euler operator `var * d/dvar`: multiplies coefficient `n` by `n`.
    pub fn euler_theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scaled_by(&BigRational::from_integer(BigInt::from(n))))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// `n! * [var^n]`, the exponential-generating-function coefficients.
    pub fn egf_coefficients(&self) -> Vec<C> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scaled_by(&BigRational::from_integer(factorial(n))))
            .collect()
    }

    /// Drops the constant term and divides by `var`; the order drops by one.
    pub fn shift_down(&self) -> Self {
        assert!(self.order() >= 1, "cannot lower the order of a constant series");
        Self::new(self.var, self.coeffs[1..].to_vec())
    }

    /// Keeps terms up to `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self::new(self.var, self.coeffs[..=order].to_vec())
    }
}

/// Bivariate series in `t` and `x`, truncated per variable at `(n_t, n_x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries2<C> {
    n_t: usize,
    n_x: usize,
    grid: Vec<C>,
}

impl<C: Coefficient> TruncSeries2<C> {
    pub fn from_fn(n_t: usize, n_x: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut grid = Vec::with_capacity((n_t + 1) * (n_x + 1));
        for i in 0..=n_t {
            for j in 0..=n_x {
                grid.push(f(i, j));
            }
        }
        Self { n_t, n_x, grid }
    }

    pub fn zero(n_t: usize, n_x: usize) -> Self {
        Self::from_fn(n_t, n_x, |_, _| C::zero())
    }

    pub fn one(n_t: usize, n_x: usize) -> Self {
        Self::from_fn(n_t, n_x, |i, j| if i == 0 && j == 0 { C::one() } else { C::zero() })
    }

    /// Product `a(t) * b(x)` of a `t`-series and an `x`-series.
    pub fn outer(a: &TruncSeries1<C>, b: &TruncSeries1<C>) -> Result<Self> {
        if a.var() != SeriesVar::T || b.var() != SeriesVar::X {
            return Err(Error::VariableMismatch(a.var().to_string(), b.var().to_string()));
        }
        Ok(Self::from_fn(a.order(), b.order(), |i, j| a.coeff(i).times(b.coeff(j))))
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.n_t, self.n_x)
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.grid[i * (self.n_x + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        let idx = i * (self.n_x + 1) + j;
        self.grid[idx] = c;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.orders() != other.orders() {
            return Err(Error::OrderMismatch {
                left: self.orders(),
                right: other.orders(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n_t: self.n_t,
            n_x: self.n_x,
            grid: self.grid.iter().zip(&other.grid).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n_t: self.n_t,
            n_x: self.n_x,
            grid: self.grid.iter().zip(&other.grid).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            n_t: self.n_t,
            n_x: self.n_x,
            grid: self.grid.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// Cauchy product truncated at `(n_t, n_x)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n_t, self.n_x);
        for i in 0..=self.n_t {
            for j in 0..=self.n_x {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..=self.n_t - i {
                    for r in 0..=self.n_x - j {
                        let b = other.get(p, r);
                        if b.is_zero() {
                            continue;
                        }
                        let idx = (i + p) * (self.n_x + 1) + (j + r);
                        out.grid[idx].accumulate(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact quotient solved coefficient by coefficient in lexicographic order.
    pub fn div(&self, den: &Self) -> Result<Self> {
        self.check(den)?;
        let inv0 = den.get(0, 0).unit_inverse().ok_or(Error::NonUnitConstant)?;
        let support: Vec<(usize, usize)> = (0..=self.n_t)
            .flat_map(|p| (0..=self.n_x).map(move |r| (p, r)))
            .filter(|&(p, r)| (p, r) != (0, 0) && !den.get(p, r).is_zero())
            .collect();
        let mut q = Self::zero(self.n_t, self.n_x);
        for i in 0..=self.n_t {
            for j in 0..=self.n_x {
                let mut acc = self.get(i, j).clone();
                for &(p, r) in &support {
                    if p <= i && r <= j {
                        acc = acc.minus(&den.get(p, r).times(q.get(i - p, j - r)));
                    }
                }
                q.set(i, j, acc.times(&inv0));
            }
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::coeff::{rat, ratio};
    use crate::exact::{PolyYW, Var};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(coeffs: &[i64]) -> TruncSeries1<BigRational> {
        TruncSeries1::new(SeriesVar::T, coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q(&[1, 1, 0]).mul(&q(&[1, -1, 0])).unwrap(), q(&[1, 0, -1]));
    }

    #[test]
    fn geometric_series() {
        assert_eq!(q(&[1, 0, 0, 0]).div(&q(&[1, -1, 0, 0])).unwrap(), q(&[1, 1, 1, 1]));
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        assert_eq!(q(&[1, 0]).div(&q(&[0, 1])), Err(Error::NonUnitConstant));
        let a = q(&[1, 2]);
        assert!(matches!(a.mul(&q(&[1, 2, 3])), Err(Error::OrderMismatch { .. })));
        let x = TruncSeries1::new(SeriesVar::X, vec![rat(1), rat(2)]);
        assert!(matches!(a.add(&x), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn exponentials_cancel() {
        let w = PolyYW::w();
        let e = TruncSeries1::exp_linear(&w, SeriesVar::T, 6);
        let e_inv = TruncSeries1::exp_linear(&w.negated(), SeriesVar::T, 6);
        assert_eq!(e.mul(&e_inv).unwrap(), TruncSeries1::one(SeriesVar::T, 6));
        assert_eq!(e.coeff(2).to_string(), "1/2*w^2");
        let zero = TruncSeries1::exp_linear(&PolyYW::zero(), SeriesVar::T, 3);
        assert_eq!(zero, TruncSeries1::one(SeriesVar::T, 3));
    }

    #[test]
    fn separable_product_grid() {
        let et = TruncSeries1::exp_linear(&rat(1), SeriesVar::T, 4);
        let ex = TruncSeries1::exp_linear(&rat(1), SeriesVar::X, 4);
        let grid = TruncSeries2::outer(&et, &ex).unwrap();
        for i in 0..=4 {
            for j in 0..=4 {
                let expected = BigRational::new(BigInt::from(1), factorial(i) * factorial(j));
                assert_eq!(grid.get(i, j), &expected);
            }
        }
        let wt = TruncSeries1::exp_linear(&PolyYW::w(), SeriesVar::T, 2);
        let yx = TruncSeries1::exp_linear(&PolyYW::y(), SeriesVar::X, 2);
        let g = TruncSeries2::outer(&wt, &yx).unwrap();
        assert_eq!(g.get(1, 1), &PolyYW::y().mul_ref(&PolyYW::w()));
    }

    #[test]
    fn euler_theta_on_geometric_series() {
        let geo = TruncSeries1::new(SeriesVar::Z, vec![rat(1); 4]);
        assert_eq!(
            geo.euler_theta(),
            TruncSeries1::new(SeriesVar::Z, vec![rat(0), rat(1), rat(2), rat(3)])
        );
        // (1 + theta) 1/(1-z) = 1/(1-z)^2.
        let geo = TruncSeries1::new(SeriesVar::Z, vec![rat(1); 5]);
        let lhs = geo.add(&geo.euler_theta()).unwrap();
        assert_eq!(lhs, geo.mul(&geo).unwrap());
        let c = TruncSeries1::constant(SeriesVar::Z, 3, ratio(7, 2));
        assert_eq!(c.euler_theta(), TruncSeries1::zero(SeriesVar::Z, 3));
    }

    fn series2(n: usize) -> impl Strategy<Value = TruncSeries2<BigRational>> {
        prop::collection::vec(-4i64..5, (n + 1) * (n + 1)).prop_map(move |v| {
            TruncSeries2::from_fn(n, n, |i, j| rat(v[i * (n + 1) + j]))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn division_round_trip(num in series2(3), mut den in series2(3), c0 in 1i64..4) {
            den.set(0, 0, rat(c0));
            let quotient = num.div(&den).unwrap();
            prop_assert_eq!(quotient.mul(&den).unwrap(), num);
        }

        #[test]
        fn ring_axioms_2d(a in series2(2), b in series2(2), c in series2(2)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn poly_coefficient_division() {
        // 1/(1 - y t) = sum y^n t^n.
        let one = TruncSeries1::one(SeriesVar::T, 3);
        let den = TruncSeries1::new(
            SeriesVar::T,
            vec![PolyYW::from_int(1), PolyYW::y().negated(), PolyYW::zero(), PolyYW::zero()],
        );
        let quo = one.div(&den).unwrap();
        assert_eq!(quo.coeff(3), &PolyYW::y().pow(3));
        assert_eq!(quo.coeff(3).degree(Var::Y), Some(3));
    }
}
