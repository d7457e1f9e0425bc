//! Exponents of the algebraic-geometry code families and the growth-rate
//! constants they give for lattice packings. All logarithms are binary.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

pub const DEFAULT_S_MAX: u32 = 40;
const ROOT_MAX_ITERS: usize = 200;

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("delta = {delta} must lie in (0, 1)")))
    }
}

fn check_s(s: u32) -> Result<()> {
    if s >= 3 {
        Ok(())
    } else {
        Err(Error::Domain(format!("s = {s} must be at least 3")))
    }
}

/// `log2(q / (q − 1))` for `q = 2^{2s}`, without cancellation.
fn log2_q_ratio(s: u32) -> f64 {
    -(-(0.25f64.powi(s as i32))).ln_1p() / LN_2
}

/// `H(δ) = −δ log δ − (1−δ) log(1−δ)`.
pub fn binary_entropy(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(-(delta * delta.ln() + (1.0 - delta) * (-delta).ln_1p()) / LN_2)
}

/// A validated `(s, δ, s_max)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentParams {
    pub s: u32,
    pub delta: f64,
    pub s_max: u32,
}

impl ExponentParams {
    pub fn new(s: u32, delta: f64, s_max: u32) -> Result<Self> {
        check_s(s)?;
        check_s(s_max)?;
        check_delta(delta)?;
        Ok(Self { s, delta, s_max })
    }

    pub fn es(&self) -> f64 {
        exponent_es(self.s, self.delta).expect("validated")
    }
}

/// `E_s(δ) = H(δ) − 2s/(2^s − 1) − log(2^{2s}/(2^{2s} − 1))`; may be negative.
pub fn exponent_es(s: u32, delta: f64) -> Result<f64> {
    check_s(s)?;
    let h = binary_entropy(delta)?;
    let s_f = s as f64;
    Ok(h - 2.0 * s_f / (2f64.powi(s as i32) - 1.0) - log2_q_ratio(s))
}

/// `E(δ) = max_{3 <= s <= s_max} 2^{−2s} E_s(δ)` and the first maximizing `s`.
pub fn exponent_e(delta: f64, s_max: u32) -> Result<(f64, u32)> {
    check_s(s_max)?;
    let mut best = (f64::NEG_INFINITY, 3);
    for s in 3..=s_max {
        let v = exponent_es(s, delta)? * 0.25f64.powi(s as i32);
        if v > best.0 {
            best = (v, s);
        }
    }
    Ok(best)
}

/// `M = E(1/2) = (1/7 − log(64/63))/64 ≈ 0.001877`.
pub fn constant_m() -> f64 {
    exponent_e(0.5, DEFAULT_S_MAX).expect("valid arguments").0
}

/// `c(μ) = 2^{Mμ}` for `0 < μ <= 1`.
pub fn constant_c(mu: f64) -> Result<f64> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Domain(format!("mu = {mu} must lie in (0, 1]")));
    }
    Ok((constant_m() * mu).exp2())
}

/// The algebraic form `(63 · 2^{−41/7})^{1/64}` of `c(1)`.
pub fn constant_c_closed_form() -> f64 {
    (63.0 * (-41.0f64 / 7.0).exp2()).powf(1.0 / 64.0)
}

/// `μ = 1/(klm)` for bodies with block arity `k`, `l` exponents and `m` gauges.
pub fn mu(k: usize, l: usize, m: usize) -> Result<f64> {
    if k == 0 || l == 0 || m == 0 {
        return Err(Error::Domain("k, l and m must be positive".into()));
    }
    Ok(1.0 / (k * l * m) as f64)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::Numerical(format!("no sign change on [{lo}, {hi}]")));
    }
    let rising = flo < 0.0;
    for _ in 0..ROOT_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The two zeros `δ₁ < 1/2 < δ₂` of `E_s`, with `δ₂ < 1 − 2^{−2s}` checked.
pub fn zeros_of_es(s: u32) -> Result<(f64, f64)> {
    check_s(s)?;
    let f = |d: f64| exponent_es(s, d).expect("inside (0, 1)");
    if f(0.5) <= 0.0 {
        return Err(Error::Numerical(format!("E_{s}(1/2) is not positive")));
    }
    let eps = 1e-300;
    let d1 = bisect(f, eps, 0.5)?;
    let d2 = bisect(f, 0.5, 1.0 - f64::EPSILON)?;
    let cap = 1.0 - 0.25f64.powi(s as i32);
    if d2 >= cap {
        return Err(Error::Numerical(format!("upper zero {d2} is not below {cap}")));
    }
    Ok((d1, d2))
}

/// One row of the growth-rate comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub n: u64,
    /// `n² + n`, the bound valid for every convex body.
    pub quadratic: f64,
    /// `log2` of the exponential rate `2^{Mn}` (constant factor omitted).
    pub rate_log2: f64,
    pub rate: f64,
    /// `1.015ⁿ` (constant factor omitted).
    pub euclidean_rate: f64,
}

pub fn bound_row(n: u64) -> Result<BoundRow> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let nf = n as f64;
    let rate_log2 = constant_m() * nf;
    Ok(BoundRow {
        n,
        quadratic: nf * nf + nf,
        rate_log2,
        rate: rate_log2.exp2(),
        euclidean_rate: 1.015f64.powf(nf),
    })
}

pub fn bound_table(n_values: &[u64]) -> Result<Vec<BoundRow>> {
    n_values.iter().map(|&n| bound_row(n)).collect()
}

/// First `n` at which `2^{Mn} > n² + n`, found by scanning.
pub fn crossover() -> u64 {
    let m = constant_m();
    (1u64..)
        .find(|&n| {
            let nf = n as f64;
            m * nf > (nf * nf + nf).log2()
        })
        .expect("the exponential eventually dominates")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        // −¼log¼ − ¾log¾ = ½ + ¾·log(4/3) = 2 − ¾·log 3
        let expect = 2.0 - 0.75 * 3f64.log2();
        assert!((binary_entropy(0.25).unwrap() - expect).abs() < 1e-15);
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-15);
        for d in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(binary_entropy(d), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn es_at_half() {
        let closed = 1.0 / 7.0 - (64.0f64 / 63.0).log2();
        assert!((exponent_es(3, 0.5).unwrap() - closed).abs() < 1e-15);
        // 1/7 − log(64/63) to 30 digits: 0.120137066357059327492304347985
        assert!((exponent_es(3, 0.5).unwrap() - 0.120_137_066_357_059_33).abs() < 1e-15);
        assert!(exponent_es(3, 1e-6).unwrap() < 0.0);
        assert!((exponent_es(3, 0.3).unwrap() - exponent_es(3, 0.7).unwrap()).abs() < 1e-15);
        assert!(matches!(exponent_es(2, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn maximizer_at_half() {
        let (e, s) = exponent_e(0.5, 40).unwrap();
        assert_eq!(s, 3);
        assert_eq!(e, constant_m());
        let closed = (1.0 / 7.0 - (64.0f64 / 63.0).log2()) / 64.0;
        assert!((constant_m() - closed).abs() < 1e-17);
        assert!((constant_m() - 0.001_877).abs() < 1e-6);
        assert!(exponent_e(0.9, 40).unwrap().0 > 0.0);
    }

    #[test]
    fn constants() {
        let c = constant_c(1.0).unwrap();
        assert!(c > 1.0013 && c < 1.0014);
        assert!((c - constant_c_closed_form()).abs() <= 1e-15);
        assert_eq!(constant_c(1.0 / 8.0).unwrap(), (constant_m() / 8.0).exp2());
        assert_eq!(mu(2, 2, 2).unwrap(), 0.125);
        assert!(constant_c(0.0).is_err());
        assert!(constant_c(1.5).is_err());
    }

    #[test]
    fn zeros() {
        let (d1, d2) = zeros_of_es(3).unwrap();
        assert!(d1 < 0.5 && 0.5 < d2 && d2 < 0.984_375);
        assert!(exponent_es(3, d1 - 1e-6).unwrap() < 0.0 && exponent_es(3, d1 + 1e-6).unwrap() > 0.0);
        assert!(exponent_es(3, d2 - 1e-6).unwrap() > 0.0 && exponent_es(3, d2 + 1e-6).unwrap() < 0.0);
        assert!(exponent_es(3, d1).unwrap().abs() <= 1e-9);
        assert!(exponent_es(3, d2).unwrap().abs() <= 1e-9);
        let (e1, _) = zeros_of_es(4).unwrap();
        assert!(e1 < d1);
    }

    #[test]
    fn table() {
        let rows = bound_table(&[64, 6400]).unwrap();
        assert_eq!(rows[0].quadratic, 4160.0);
        assert!((rows[1].rate_log2 - 6400.0 * constant_m()).abs() < 1e-12);
        assert!((rows[1].rate_log2 - 12.01).abs() < 0.01);
        let n = crossover();
        let at = bound_row(n).unwrap();
        let before = bound_row(n - 1).unwrap();
        assert!(at.rate > at.quadratic);
        assert!(before.rate <= before.quadratic);
        assert!(bound_row(0).is_err());
    }
}
