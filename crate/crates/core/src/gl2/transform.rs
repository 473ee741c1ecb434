use super::bigen_series;
use crate::error::Result;
use crate::exact::{GaussianRational, PolyYW};
use crate::moebius::Matrix2;

/// `(−1)^m p(y, −w − 1)`.
pub fn reflect_w(p: &PolyYW, m: usize) -> PolyYW {
    let ws = -(PolyYW::w() + PolyYW::from_int(1));
    let out = p.compose(&PolyYW::y(), &ws);
    if m % 2 == 0 {
        out
    } else {
        -out
    }
}

/// Checks `𝔹_m^(−l)(y,w;g f) = (−1)^m 𝔹_m^(−l)(y,−w−1;g)` for
/// `f = (0 1; 1 0)` on the grid `m ≤ max_m`, `l ≤ max_l`.
pub fn check_inversion(g: &Matrix2, max_m: usize, max_l: usize) -> Result<bool> {
    let f = Matrix2::from_ints(0, 1, 1, 0);
    let lhs = bigen_series(&g.mul(&f), max_m, max_l)?;
    let rhs = bigen_series(g, max_m, max_l)?;
    Ok((0..=max_m).all(|m| (0..=max_l).all(|l| *lhs.get(m, l) == reflect_w(rhs.get(m, l), m))))
}

/// Checks `𝔹_m^(−l)(y,w;αg) = α^{−1} 𝔹_m^(−l)(y,w;g)` on the grid.
pub fn check_scaling(g: &Matrix2, alpha: &GaussianRational, max_m: usize, max_l: usize) -> Result<bool> {
    let scaled = bigen_series(&g.scale(alpha)?, max_m, max_l)?;
    let base = bigen_series(g, max_m, max_l)?;
    let inv = alpha.inv().expect("scale rejects zero");
    Ok((0..=max_m).all(|m| (0..=max_l).all(|l| *scaled.get(m, l) == base.get(m, l).scale(&inv))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn eta_times_flip_is_xi() {
        let f = Matrix2::from_ints(0, 1, 1, 0);
        assert_eq!(Matrix2::eta().mul(&f), Matrix2::xi());
        assert!(check_inversion(&Matrix2::eta(), 6, 6).unwrap());
    }

    #[test]
    fn inversion_on_other_matrices() {
        for m in [Matrix2::alpha(g("i")), Matrix2::alpha(g("-2")), "2,1;3,5".parse().unwrap()] {
            assert!(check_inversion(&m, 5, 5).unwrap());
        }
    }

    #[test]
    fn scaling_by_constants() {
        for a in ["2", "-1", "i", "3/2-i"] {
            assert!(check_scaling(&Matrix2::eta(), &g(a), 5, 5).unwrap());
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        let p = PolyYW::y() * PolyYW::w().pow(3) + PolyYW::w();
        assert_eq!(reflect_w(&reflect_w(&p, 3), 3), p);
        assert_eq!(reflect_w(&PolyYW::w(), 1), PolyYW::w() + PolyYW::from_int(1));
    }
}
