use crate::classical::bernoulli_numbers;
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin: `N = 16` direct terms and
/// the Bernoulli correction up to `B_20`.
pub fn riemann_zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::OutsideDomain(format!("zeta needs s > 1, got {s}")));
    }
    const N: usize = 16;
    const K: usize = 10;
    let bern = bernoulli_numbers(2 * K);
    let n = N as f64;
    let mut acc: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    acc += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // Term k: B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}.
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = n.powf(-s - 1.0);
    for k in 1..=K {
        acc += rational_to_f64(&bern[2 * k]) / fact * rising * power;
        rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
        fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
        power /= n * n;
    }
    Ok(acc)
}
