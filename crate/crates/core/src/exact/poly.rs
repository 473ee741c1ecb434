use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{binomial, Coefficient};
use super::gaussian::GaussianRational;

/// One of the two formal variables of [`PolyYW`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y,
    W,
}

/// Polynomial in `y` and `w` over the Gaussian rationals.
///
/// Keys are `(deg_y, deg_w)`; zero coefficients are never stored, so two
/// polynomials are equal exactly when their maps are equal.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct PolyYW {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl PolyYW {
    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn monomial(c: GaussianRational, deg_y: u32, deg_w: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert((deg_y, deg_w), c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Y => Self::y(),
            Var::W => Self::w(),
        }
    }

    pub fn y() -> Self {
        Self::monomial(GaussianRational::from_int(1), 1, 0)
    }

    pub fn w() -> Self {
        Self::monomial(GaussianRational::from_int(1), 0, 1)
    }

    /// `var + delta`.
    pub fn linear(v: Var, delta: &GaussianRational) -> Self {
        Self::var(v) + Self::constant(delta.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, deg_y: u32, deg_w: u32) -> GaussianRational {
        self.terms
            .get(&(deg_y, deg_w))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Constant value, if the polynomial has no `y` or `w` dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(dy, dw)| if v == Var::Y { dy } else { dw })
            .max()
    }

    fn add_term(&mut self, key: (u32, u32), c: &GaussianRational) {
        if Zero::is_zero(c) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                slot.accumulate(c);
                if Zero::is_zero(slot) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (&k, c) in &other.terms {
            self.add_term(k, c);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &GaussianRational, other: &Self) {
        if Zero::is_zero(factor) {
            return;
        }
        for (&k, c) in &other.terms {
            self.add_term(k, &factor.times(c));
        }
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&GaussianRational::real(q.clone()))
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ay, aw), ca) in &self.terms {
            for (&(by, bw), cb) in &other.terms {
                out.add_term((ay + by, aw + bw), &ca.times(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Full evaluation at `(y, w)`.
    pub fn eval(&self, y: &GaussianRational, w: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(dy, dw), c) in &self.terms {
            let term = c
                .times(&y.pow(dy as i64).expect("nonnegative power"))
                .times(&w.pow(dw as i64).expect("nonnegative power"));
            acc.accumulate(&term);
        }
        acc
    }

    /// Substitutes a value for one variable, keeping the other symbolic.
    pub fn eval_var(&self, v: Var, value: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (&(dy, dw), c) in &self.terms {
            let (e, key) = match v {
                Var::Y => (dy, (0, dw)),
                Var::W => (dw, (dy, 0)),
            };
            out.add_term(key, &c.times(&value.pow(e as i64).expect("nonnegative power")));
        }
        out
    }

    /// Substitutes `var -> var + delta` exactly, expanding binomially.
    pub fn shift(&self, v: Var, delta: &GaussianRational) -> Self {
        if Zero::is_zero(delta) {
            return self.clone();
        }
        let max_deg = self.degree(v).unwrap_or(0);
        let powers: Vec<GaussianRational> = (0..=max_deg)
            .map(|e| delta.pow(e as i64).expect("nonnegative power"))
            .collect();
        let mut out = Self::zero();
        for (&(dy, dw), c) in &self.terms {
            let e = if v == Var::Y { dy } else { dw };
            for i in 0..=e {
                let coeff = c
                    .times(&powers[(e - i) as usize])
                    .scaled_by(&BigRational::from_integer(binomial(e as usize, i as usize)));
                let key = if v == Var::Y { (i, dw) } else { (dy, i) };
                out.add_term(key, &coeff);
            }
        }
        out
    }

    /// Shifts both variables: `p(y + dy, w + dw)`.
    pub fn shift2(&self, dy: &GaussianRational, dw: &GaussianRational) -> Self {
        self.shift(Var::Y, dy).shift(Var::W, dw)
    }

    /// Exchanges the roles of `y` and `w`.
    pub fn swap(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(dy, dw), c)| ((dw, dy), c.clone()))
                .collect(),
        }
    }

    /// Substitutes polynomials for both variables: `p(ys, ws)`.
    pub fn compose(&self, ys: &PolyYW, ws: &PolyYW) -> Self {
        let max_y = self.degree(Var::Y).unwrap_or(0);
        let max_w = self.degree(Var::W).unwrap_or(0);
        let mut ypow = vec![Self::from_int(1)];
        for _ in 0..max_y {
            let next = ypow.last().unwrap().mul_ref(ys);
            ypow.push(next);
        }
        let mut wpow = vec![Self::from_int(1)];
        for _ in 0..max_w {
            let next = wpow.last().unwrap().mul_ref(ws);
            wpow.push(next);
        }
        let mut out = Self::zero();
        for (&(dy, dw), c) in &self.terms {
            let term = ypow[dy as usize].mul_ref(&wpow[dw as usize]);
            out.add_scaled(c, &term);
        }
        out
    }
}

impl Add for PolyYW {
    type Output = PolyYW;
    fn add(mut self, rhs: PolyYW) -> PolyYW {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for PolyYW {
    type Output = PolyYW;
    fn sub(mut self, rhs: PolyYW) -> PolyYW {
        self.add_scaled(&GaussianRational::from_int(-1), &rhs);
        self
    }
}

impl Mul for PolyYW {
    type Output = PolyYW;
    fn mul(self, rhs: PolyYW) -> PolyYW {
        self.mul_ref(&rhs)
    }
}

impl Neg for PolyYW {
    type Output = PolyYW;
    fn neg(self) -> PolyYW {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl From<GaussianRational> for PolyYW {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl Zero for PolyYW {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyYW {
    fn one() -> Self {
        PolyYW::from_int(1)
    }
}

impl Coefficient for PolyYW {
    fn from_rational(q: &BigRational) -> Self {
        PolyYW::constant(GaussianRational::real(q.clone()))
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&GaussianRational::from_int(-1), other);
        out
    }

    fn times(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }

    fn negated(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.inv().map(PolyYW::constant)
    }

    fn accumulate(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }

    fn scaled_by(&self, q: &BigRational) -> Self {
        self.scale_rational(q)
    }
}

fn monomial_str(dy: u32, dw: u32) -> String {
    let part = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [part("y", dy), part("w", dw)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical form: terms by descending `w` degree, then descending `y`
/// degree, e.g. `w^2-2*y*w+1`.
impl fmt::Display for PolyYW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.1, k.0)));
        let mut out = String::new();
        for (idx, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let mono = monomial_str(key.0, key.1);
            let (neg, mag) = if c.is_compound() {
                (false, format!("({c})"))
            } else {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&mono);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn shift_expands_binomially() {
        let w2 = PolyYW::w().pow(2);
        let shifted = w2.shift(Var::W, &gr("-1"));
        assert_eq!(shifted.to_string(), "w^2-2*w+1");
        assert_eq!(w2.shift(Var::Y, &gr("0")), w2);
        let p = PolyYW::y().mul_ref(&PolyYW::w()) + PolyYW::from_int(3);
        assert_eq!(p.shift(Var::Y, &gr("1")).shift(Var::Y, &gr("-1")), p);
    }

    #[test]
    fn canonical_display() {
        let p = PolyYW::w().pow(2) - PolyYW::y().mul_ref(&PolyYW::w()).scale(&gr("2"))
            + PolyYW::from_int(1);
        assert_eq!(p.to_string(), "w^2-2*y*w+1");
        let q = PolyYW::y().scale(&gr("1+2*i")) - PolyYW::constant(gr("i"));
        assert_eq!(q.to_string(), "(1+2*i)*y-i");
        assert_eq!(PolyYW::zero().to_string(), "0");
        assert_eq!(PolyYW::constant(gr("-4/125-22/125*i")).to_string(), "-4/125-22/125*i");
    }

    #[test]
    fn eval_and_swap() {
        let p = PolyYW::y().pow(2).mul_ref(&PolyYW::w()) + PolyYW::w().scale(&gr("5"));
        assert_eq!(p.eval(&gr("2"), &gr("3")), gr("27"));
        assert_eq!(p.swap().eval(&gr("3"), &gr("2")), gr("27"));
        assert_eq!(p.eval_var(Var::Y, &gr("2")).to_string(), "9*w");
    }

    fn small_poly() -> impl Strategy<Value = PolyYW> {
        prop::collection::vec((0u32..3, 0u32..3, -5i64..6, -3i64..4), 0..5).prop_map(|ts| {
            let mut p = PolyYW::zero();
            for (dy, dw, re, im) in ts {
                let c = GaussianRational::new(
                    super::super::coeff::rat(re),
                    super::super::coeff::rat(im),
                );
                p.add_assign_ref(&PolyYW::monomial(c, dy, dw));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&b.clone().add(c.clone())),
                a.mul_ref(&b) + a.mul_ref(&c));
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            prop_assert!((a.clone() - a.clone()).is_zero());
        }

        #[test]
        fn shift_is_substitution(a in small_poly(), d in -3i64..4, y in -3i64..4, w in -3i64..4) {
            let d = GaussianRational::from_int(d);
            let (yv, wv) = (GaussianRational::from_int(y), GaussianRational::from_int(w));
            prop_assert_eq!(a.shift(Var::W, &d).eval(&yv, &wv), a.eval(&yv, &(&wv + &d)));
            prop_assert_eq!(a.shift(Var::Y, &d).eval(&yv, &wv), a.eval(&(&yv + &d), &wv));
        }
    }
}
