use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact commutative ring used as a series coefficient.
///
/// Every operation works on references so that big-number coefficients are
/// never cloned just to be combined.
pub trait Coefficient: Clone + PartialEq + Debug + Zero + One {
    fn from_rational(q: &BigRational) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn scaled_by(&self, q: &BigRational) -> Self {
        self.times(&Self::from_rational(q))
    }
}

impl Coefficient for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        if Zero::is_zero(self) || Zero::is_zero(other) {
            return Zero::zero();
        }
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn accumulate(&mut self, other: &Self) {
        if !Zero::is_zero(other) {
            *self += other;
        }
    }

    fn scaled_by(&self, q: &BigRational) -> Self {
        self * q
    }
}

/// `n` as an exact rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as an exact rational; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact `n!`.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `q^e` for any integer exponent; `None` for a zero base with `e < 0`.
pub fn rational_pow(q: &BigRational, e: i64) -> Option<BigRational> {
    if e < 0 && Zero::is_zero(q) {
        return None;
    }
    let mut base = if e < 0 { q.recip() } else { q.clone() };
    let mut n = e.unsigned_abs();
    let mut acc: BigRational = One::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    Some(acc)
}

/// Lossy conversion used by the numeric layer.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling for huge numerators/denominators.
    let n = q.numer().bits() as i64;
    let d = q.denom().bits() as i64;
    let shift = n - d;
    let scaled = if shift > 0 {
        q / BigRational::from_integer(BigInt::one() << (shift as usize))
    } else {
        q * BigRational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    let m = scaled.to_f64().unwrap_or(0.0);
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * m.abs() * 2f64.powi(shift as i32)
}
