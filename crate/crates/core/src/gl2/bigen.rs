use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, Coefficient, GaussianRational, PolyYW, TruncSeries2};
use crate::moebius::Matrix2;

/// Grid of `𝔹_m^(−l)(y,w;g)` for `m ≤ max_m`, `l ≤ max_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlPolyBernoulli {
    g: Matrix2,
    max_m: usize,
    max_l: usize,
    grid: Vec<PolyYW>,
}

impl GlPolyBernoulli {
    pub fn matrix(&self) -> &Matrix2 {
        &self.g
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.max_m, self.max_l)
    }

    /// `𝔹_m^(−l)(y,w;g)`; panics outside the computed grid.
    pub fn get(&self, m: usize, l: usize) -> &PolyYW {
        assert!(m <= self.max_m && l <= self.max_l, "({m}, {l}) outside the grid");
        &self.grid[m * (self.max_l + 1) + l]
    }

    pub fn try_get(&self, m: usize, l: usize) -> Result<&PolyYW> {
        if m > self.max_m || l > self.max_l {
            return Err(Error::InvalidArgument(format!(
                "entry ({m}, {l}) outside the computed grid ({}, {})",
                self.max_m, self.max_l
            )));
        }
        Ok(self.get(m, l))
    }

    /// `𝔹_m^(−l)(y,w;g)` at a point.
    pub fn value(&self, m: usize, l: usize, y: &GaussianRational, w: &GaussianRational) -> GaussianRational {
        self.get(m, l).eval(y, w)
    }
}

/// Expands `e^{wt} e^{yx} / [(c e^{−t} + d) − (a e^{−t} + b) e^x]` and reads
/// off `𝔹_m^(−l)(y,w;g)` as `m! l!` times the coefficient of `t^m x^l`.
///
/// Needs only `det g ≠ 0` and `g1 ≠ 1`; the constant term of the
/// denominator is `(c + d) − (a + b)`.
pub fn bigen_series(g: &Matrix2, max_m: usize, max_l: usize) -> Result<GlPolyBernoulli> {
    if g.fixes_one() {
        return Err(Error::DegenerateAtOne);
    }
    let inv_fact: Vec<BigRational> = (0..=max_m.max(max_l))
        .map(|n| BigRational::new(BigInt::one(), factorial(n)))
        .collect();
    let signed = |i: usize| {
        if i % 2 == 0 {
            inv_fact[i].clone()
        } else {
            -inv_fact[i].clone()
        }
    };
    let den = TruncSeries2::from_fn(max_m, max_l, |i, j| {
        // [t^i] e^{−t} = (−1)^i / i!, [x^j] e^x = 1 / j!.
        let e_t = GaussianRational::real(signed(i));
        let mut v = GaussianRational::zero();
        if j == 0 {
            v = &v + &(&g.c * &e_t);
            if i == 0 {
                v = &v + &g.d;
            }
        }
        let mut num = &g.a * &e_t;
        if i == 0 {
            num = &num + &g.b;
        }
        &v - &num.scaled_by(&inv_fact[j])
    });
    let recip = TruncSeries2::one(max_m, max_l).div(&den).map_err(|e| match e {
        Error::NonUnitConstant => Error::DegenerateAtOne,
        other => other,
    })?;

    // Multiply by the separable numerator e^{wt} e^{yx} entry by entry.
    let mut grid = Vec::with_capacity((max_m + 1) * (max_l + 1));
    for m in 0..=max_m {
        for l in 0..=max_l {
            let mut p = PolyYW::zero();
            for i in 0..=m {
                for j in 0..=l {
                    let r = recip.get(i, j);
                    if r.is_zero() {
                        continue;
                    }
                    let c = r.scaled_by(&(&inv_fact[m - i] * &inv_fact[l - j]));
                    p.add_assign_ref(&PolyYW::monomial(c, (l - j) as u32, (m - i) as u32));
                }
            }
            let scale = BigRational::from_integer(factorial(m) * factorial(l));
            grid.push(p.scale_rational(&scale));
        }
    }
    Ok(GlPolyBernoulli { g: g.clone(), max_m, max_l, grid })
}
