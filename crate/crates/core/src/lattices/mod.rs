//! The lattice `Λ(C, t) = Zⁿ + (1/t)⟨C_d⟩` and exact counting of its
//! minimal vectors.
//!
//! Lattice vectors are carried as integer numerators over the common
//! denominator `t`; floating point only enters when a gauge is evaluated.

mod coset;
mod kissing;
mod modbasis;
mod oracle;

pub use coset::{shortest_in_coset, CosetShortest, CosetSubgroup, MAX_COSETS};
pub use kissing::{kissing_count, kissing_count_with, KissingReport, Method, MAX_WITNESSES};
pub use modbasis::ModularBasis;
pub use oracle::{brute_force_kissing, brute_force_short_vectors, required_box, MAX_ORACLE_DIM, MAX_ORACLE_POINTS};

use crate::error::{Error, Result};
use crate::gf2codes::BinaryCode;

/// Largest denominator; coset representatives are stored as bytes.
pub const MAX_T: i64 = 255;

#[derive(Debug, Clone)]
pub struct LatticeD {
    code: BinaryCode,
    t: i64,
    d: usize,
    /// Minimum-weight codewords as 0/1 integer vectors.
    generators: Vec<Vec<i64>>,
    basis: ModularBasis,
    /// Uniform scale applied to every vector (1 for `Λ` itself).
    scale: f64,
}

impl LatticeD {
    /// Builds `Λ(C, t)`. Sweeps the code for `C_d` if it is not cached yet.
    pub fn new(code: &BinaryCode, t: i64) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidParameter(format!("t = {t} must be at least 2")));
        }
        if t > MAX_T {
            return Err(Error::InvalidParameter(format!("t = {t} exceeds {MAX_T}")));
        }
        let n = code.n();
        let d = code.min_distance()?;
        let generators: Vec<Vec<i64>> = code
            .min_weight_codewords()?
            .iter()
            .map(|&w| (0..n).map(|i| (w >> i & 1) as i64).collect())
            .collect();
        let basis = ModularBasis::natural(&generators, t, n);
        Ok(Self {
            code: code.clone(),
            t,
            d,
            generators,
            basis,
            scale: 1.0,
        })
    }

    /// The same lattice scaled by `alpha > 0`.
    pub fn rescaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("scale {alpha} must be positive")));
        }
        let mut out = self.clone();
        out.scale *= alpha;
        Ok(out)
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a_d(&self) -> usize {
        self.generators.len()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn basis(&self) -> &ModularBasis {
        &self.basis
    }

    /// Whether the vector with numerators `num` (over `t`) lies in `Λ`.
    pub fn contains(&self, num: &[i64]) -> bool {
        num.len() == self.n() && self.basis.contains(num)
    }

    /// Real coordinates `scale · num / t`.
    pub fn to_real(&self, num: &[i64]) -> Vec<f64> {
        let f = self.scale / self.t as f64;
        num.iter().map(|&v| v as f64 * f).collect()
    }

    /// Splits `v = (r/t)·v0 + v1` with `v0 ∈ {0,…,t−1}ⁿ`, `v1 ∈ Zⁿ`.
    ///
    /// A nonzero `v0` of weight below `d` is returned as
    /// [`Error::DecompositionAnomaly`].
    pub fn decompose(&self, num: &[i64]) -> Result<Decomposition> {
        if !self.contains(num) {
            return Err(Error::NotInLattice);
        }
        let v0: Vec<i64> = num.iter().map(|&v| v.rem_euclid(self.t)).collect();
        let v1: Vec<i64> = num.iter().zip(&v0).map(|(&v, &f)| (v - f) / self.t).collect();
        let weight = v0.iter().filter(|&&v| v != 0).count();
        if weight == 0 {
            return Ok(Decomposition { r: 0, v0, v1 });
        }
        if weight < self.d {
            return Err(Error::DecompositionAnomaly { v0, weight, d: self.d });
        }
        Ok(Decomposition { r: 1, v0, v1 })
    }
}

/// `v = (r/t)·v0 + v1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub r: u8,
    pub v0: Vec<i64>,
    pub v1: Vec<i64>,
}

/// `t = ⌈d^{1/p}⌉`, clamped to at least 2.
///
/// Computed as the least integer `m` with `m^p >= d` so that exact powers
/// (`d = 8, p = 3`) do not round up.
pub fn choose_t_lp(p: f64, d: usize) -> Result<i64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    let target = d as f64;
    let mut m = (target.powf(1.0 / p).floor() as i64).max(1);
    while (m as f64).powf(p) < target * (1.0 - 1e-12) {
        m += 1;
    }
    while m > 1 && ((m - 1) as f64).powf(p) >= target * (1.0 - 1e-12) {
        m -= 1;
    }
    Ok(m.max(2))
}

/// Number of nonzero entries of `num mod t`.
pub(crate) fn fractional_support(num: &[i64], t: i64) -> usize {
    num.iter().filter(|&&v| v.rem_euclid(t) != 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2codes::named_code;

    #[test]
    fn t_choice() {
        assert_eq!(choose_t_lp(1.0, 4).unwrap(), 4);
        assert_eq!(choose_t_lp(2.0, 4).unwrap(), 2);
        assert_eq!(choose_t_lp(3.0, 4).unwrap(), 2);
        assert_eq!(choose_t_lp(3.0, 8).unwrap(), 2);
        assert_eq!(choose_t_lp(2.0, 8).unwrap(), 3);
        assert_eq!(choose_t_lp(1.5, 8).unwrap(), 4);
        assert_eq!(choose_t_lp(1.5, 4).unwrap(), 3);
        assert_eq!(choose_t_lp(2.0, 1).unwrap(), 2);
        assert!(choose_t_lp(0.5, 4).is_err());
    }

    #[test]
    fn t_choice_against_float_ceiling() {
        for d in 1..200usize {
            for p in [1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0] {
                let t = choose_t_lp(p, d).unwrap();
                let root = (d as f64).powf(1.0 / p);
                let near_integer = (root - root.round()).abs() < 1e-9;
                if !near_integer {
                    assert_eq!(t, (root.ceil() as i64).max(2), "d={d} p={p}");
                } else {
                    assert_eq!(t, (root.round() as i64).max(2), "d={d} p={p}");
                }
            }
        }
    }

    #[test]
    fn construction_containments() {
        let code = named_code("hamming8").unwrap();
        let lat = LatticeD::new(&code, 2).unwrap();
        for i in 0..8 {
            let mut e = vec![0; 8];
            e[i] = 2;
            assert!(lat.contains(&e), "Zⁿ ⊆ Λ");
        }
        for g in lat.generators() {
            assert!(lat.contains(g));
        }
        assert!(!lat.contains(&[1, 0, 0, 0, 0, 0, 0, 0]));
        assert!(matches!(LatticeD::new(&code, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn decomposition() {
        let code = named_code("hamming8").unwrap();
        let lat = LatticeD::new(&code, 4).unwrap();
        let e1 = [4, 0, 0, 0, 0, 0, 0, 0];
        let dec = lat.decompose(&e1).unwrap();
        assert_eq!(
            (dec.r, dec.v0.clone(), dec.v1.clone()),
            (0, vec![0; 8], vec![1, 0, 0, 0, 0, 0, 0, 0])
        );
        for c in lat.generators() {
            let dec = lat.decompose(c).unwrap();
            assert_eq!(dec.r, 1);
            assert_eq!(&dec.v0, c);
            assert_eq!(dec.v1, vec![0; 8]);
        }
        assert_eq!(lat.decompose(&[1, 0, 0, 0, 0, 0, 0, 0]), Err(Error::NotInLattice));
    }

    #[test]
    fn pairwise_sums_support() {
        // (c1 + c2)/t for distinct minimum-weight words: supp(c1 + c2) ⊇ supp(c1 ⊕ c2).
        let code = named_code("hamming8").unwrap();
        let lat = LatticeD::new(&code, 4).unwrap();
        let g = lat.generators();
        for a in g {
            for b in g {
                if a == b {
                    continue;
                }
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let dec = lat.decompose(&s).unwrap();
                assert!(dec.v0.iter().filter(|&&v| v != 0).count() >= 4);
            }
        }
    }

    #[test]
    fn anomaly_is_reported_not_raised() {
        // c1 + c2 − (c1 ⊕ c2) = 2·(c1 ∩ c2) has support 2 < d = 4.
        let code = named_code("hamming8").unwrap();
        let lat = LatticeD::new(&code, 4).unwrap();
        let v = [2, 2, 0, 0, 0, 0, 0, 0];
        assert!(lat.contains(&v));
        match lat.decompose(&v) {
            Err(Error::DecompositionAnomaly { weight, d, .. }) => assert_eq!((weight, d), (2, 4)),
            other => panic!("{other:?}"),
        }
    }
}
