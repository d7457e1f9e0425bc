//! Generalized superballs `{x : Σ_j f_j(x_{S_j})^{p_j} <= 1}` over a
//! partition `{S_j}` of the coordinates, and their Minkowski functionals.

mod linalg;
mod parse;

pub use linalg::{SymMatrix, PD_PIVOT_TOL};
pub use parse::parse_body_spec;

use std::fmt;

use crate::error::{Error, Result};
use crate::ties_with;

/// Arity cap for integer-minimum and coset enumeration over a block.
pub const MAX_BLOCK_ARITY: usize = 8;
/// Cap on the number of integer points swept by [`BlockGauge::min_integer_gauge`].
const MAX_INTEGER_BOX: u128 = 50_000_000;
const BISECTION_MAX_ITERS: usize = 200;

/// A gauge (distance function) of a convex body in `R^k`.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockGauge {
    /// `scale · (Σ w_i |x_i|^q)^{1/q}`.
    WeightedLq { q: f64, weights: Vec<f64>, scale: f64 },
    /// `max_i w_i |x_i|`.
    MaxNorm { weights: Vec<f64> },
    /// `sqrt(xᵀ Q x)`.
    QuadFormSqrt { matrix: SymMatrix },
}

/// Outcome of the pivot monotonicity check `f(e_p) <= f(e_p + a)` for all `a ⟂ e_p`.
#[derive(Debug, Clone, PartialEq)]
pub enum Monotonicity {
    Pass,
    /// The minimizing point (pivot coordinate 1) and the value of `f` there.
    Fail {
        witness: Vec<f64>,
        value: f64,
    },
}

/// Minimum of a block gauge over nonzero integer points.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerMinimum {
    pub rho: f64,
    /// Every integer point attaining `rho` (within the tie tolerance), sorted.
    pub witnesses: Vec<Vec<i64>>,
    /// Half-width of the box that was swept.
    pub box_radius: i64,
}

impl BlockGauge {
    pub fn lq(q: f64, weights: Vec<f64>, scale: f64) -> Result<Self> {
        let g = BlockGauge::WeightedLq { q, weights, scale };
        g.validate()?;
        Ok(g)
    }

    pub fn max(weights: Vec<f64>) -> Result<Self> {
        let g = BlockGauge::MaxNorm { weights };
        g.validate()?;
        Ok(g)
    }

    pub fn quad(rows: &[Vec<f64>]) -> Result<Self> {
        let g = BlockGauge::QuadFormSqrt {
            matrix: SymMatrix::from_rows(rows)?,
        };
        g.validate()?;
        Ok(g)
    }

    /// Plain `|x|` on a single coordinate.
    pub fn abs() -> Self {
        BlockGauge::WeightedLq {
            q: 1.0,
            weights: vec![1.0],
            scale: 1.0,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            BlockGauge::WeightedLq { weights, .. } | BlockGauge::MaxNorm { weights } => weights.len(),
            BlockGauge::QuadFormSqrt { matrix } => matrix.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            BlockGauge::WeightedLq { .. } => "lq",
            BlockGauge::MaxNorm { .. } => "max",
            BlockGauge::QuadFormSqrt { .. } => "quad",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |w: &[f64]| w.iter().all(|&v| v.is_finite() && v > 0.0);
        match self {
            BlockGauge::WeightedLq { q, weights, scale } => {
                if !(q.is_finite() && *q >= 1.0) {
                    return Err(Error::InvalidGauge(format!("q = {q} must be >= 1")));
                }
                if weights.is_empty() || !positive(weights) {
                    return Err(Error::InvalidGauge("lq weights must be positive".into()));
                }
                if !(scale.is_finite() && *scale > 0.0) {
                    return Err(Error::InvalidGauge(format!("scale = {scale} must be positive")));
                }
            }
            BlockGauge::MaxNorm { weights } => {
                if weights.is_empty() || !positive(weights) {
                    return Err(Error::InvalidGauge("max weights must be positive".into()));
                }
            }
            BlockGauge::QuadFormSqrt { matrix } => {
                if !matrix.is_positive_definite() {
                    return Err(Error::InvalidGauge("quadratic form is not positive definite".into()));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            BlockGauge::WeightedLq { q, weights, scale } => {
                let s = if *q == 1.0 {
                    weights.iter().zip(x).map(|(w, v)| w * v.abs()).sum::<f64>()
                } else if *q == 2.0 {
                    weights.iter().zip(x).map(|(w, v)| w * v * v).sum::<f64>().sqrt()
                } else {
                    weights
                        .iter()
                        .zip(x)
                        .map(|(w, v)| w * v.abs().powf(*q))
                        .sum::<f64>()
                        .powf(1.0 / q)
                };
                scale * s
            }
            BlockGauge::MaxNorm { weights } => weights.iter().zip(x).map(|(w, v)| w * v.abs()).fold(0.0, f64::max),
            BlockGauge::QuadFormSqrt { matrix } => matrix.quad_form(x).max(0.0).sqrt(),
        }
    }

    /// `f(e_i)`.
    pub fn axis_value(&self, i: usize) -> f64 {
        let mut e = vec![0.0; self.arity()];
        e[i] = 1.0;
        self.eval(&e)
    }

    /// `R = max{|x_i| : f(x) <= 1}`, so that `f(x) >= ‖x‖_∞ / R`.
    pub fn radius(&self) -> f64 {
        match self {
            BlockGauge::WeightedLq { q, weights, scale } => weights
                .iter()
                .map(|w| 1.0 / (scale * w.powf(1.0 / q)))
                .fold(0.0, f64::max),
            BlockGauge::MaxNorm { weights } => weights.iter().map(|w| 1.0 / w).fold(0.0, f64::max),
            BlockGauge::QuadFormSqrt { matrix } => matrix
                .inverse_diagonal()
                .expect("validated positive definite")
                .into_iter()
                .map(f64::sqrt)
                .fold(0.0, f64::max),
        }
    }

    pub fn check_monotonicity(&self, pivot: usize) -> Result<Monotonicity> {
        let k = self.arity();
        if pivot >= k {
            return Err(Error::InvalidParameter(format!("pivot {pivot} >= arity {k}")));
        }
        let BlockGauge::QuadFormSqrt { matrix } = self else {
            return Ok(Monotonicity::Pass);
        };
        if k == 1 {
            return Ok(Monotonicity::Pass);
        }
        // min_a Q(e_p + a) is attained at a = -Q_rr⁻¹ Q_rp with value
        // Q_pp - Q_pr Q_rr⁻¹ Q_rp (Schur complement).
        let rest: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
        let q_rp: Vec<f64> = rest.iter().map(|&i| matrix.get(i, pivot)).collect();
        let q_pp = matrix.get(pivot, pivot);
        if q_rp.iter().all(|&v| v.abs() <= 1e-15 * q_pp) {
            return Ok(Monotonicity::Pass);
        }
        let sol = matrix.submatrix(&rest).solve(&q_rp)?;
        let schur = q_pp - q_rp.iter().zip(&sol).map(|(a, b)| a * b).sum::<f64>();
        if schur >= q_pp * (1.0 - 1e-12) {
            return Ok(Monotonicity::Pass);
        }
        let mut witness = vec![0.0; k];
        witness[pivot] = 1.0;
        for (&i, s) in rest.iter().zip(&sol) {
            witness[i] = -s;
        }
        Ok(Monotonicity::Fail {
            witness,
            value: schur.max(0.0).sqrt(),
        })
    }

    /// The coordinate minimizing `f(e_i)` among those passing the monotonicity
    /// check (lowest index on ties). Fails with the first witness found.
    pub fn default_pivot(&self) -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        let mut first_witness = None;
        for i in 0..self.arity() {
            match self.check_monotonicity(i)? {
                Monotonicity::Pass => {
                    let v = self.axis_value(i);
                    if best.is_none_or(|(_, b)| v < b && !ties_with(v, b)) {
                        best = Some((i, v));
                    }
                }
                Monotonicity::Fail { witness, .. } => {
                    first_witness.get_or_insert(witness);
                }
            }
        }
        best.map(|(i, _)| i).ok_or_else(|| Error::Monotonicity {
            witness: first_witness.unwrap_or_default(),
        })
    }

    /// `ρ = min{f(z) : z ∈ Z^k \ {0}}` by sweeping `‖z‖_∞ <= ⌈R·u⌉`, where
    /// `u = min_i f(e_i)` bounds `ρ` from above.
    pub fn min_integer_gauge(&self) -> Result<IntegerMinimum> {
        let k = self.arity();
        if k > MAX_BLOCK_ARITY {
            return Err(Error::ResourceLimit {
                what: "block arity",
                reached: k as u128,
                limit: MAX_BLOCK_ARITY as u128,
            });
        }
        let u = (0..k).map(|i| self.axis_value(i)).fold(f64::INFINITY, f64::min);
        let b = (self.radius() * u).ceil().max(1.0) as i64;
        let points = (2 * b as u128 + 1).pow(k as u32);
        if points > MAX_INTEGER_BOX {
            return Err(Error::ResourceLimit {
                what: "integer box for rho",
                reached: points,
                limit: MAX_INTEGER_BOX,
            });
        }
        let mut rho = f64::INFINITY;
        let mut witnesses: Vec<Vec<i64>> = Vec::new();
        let mut z = vec![-b; k];
        let mut xf = vec![0.0; k];
        loop {
            if z.iter().any(|&v| v != 0) {
                for (dst, &src) in xf.iter_mut().zip(&z) {
                    *dst = src as f64;
                }
                let v = self.eval(&xf);
                if ties_with(v, rho) {
                    witnesses.push(z.clone());
                    rho = rho.min(v);
                } else if v < rho {
                    rho = v;
                    witnesses.clear();
                    witnesses.push(z.clone());
                }
            }
            if !odometer(&mut z, -b, b) {
                break;
            }
        }
        witnesses.sort();
        Ok(IntegerMinimum {
            rho,
            witnesses,
            box_radius: b,
        })
    }
}

/// Advances `z` through `[lo, hi]^k`; returns false after the last point.
pub(crate) fn odometer(z: &mut [i64], lo: i64, hi: i64) -> bool {
    for v in z.iter_mut().rev() {
        if *v < hi {
            *v += 1;
            return true;
        }
        *v = lo;
    }
    false
}

impl fmt::Display for BlockGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        match self {
            BlockGauge::WeightedLq { q, weights, scale } => {
                write!(f, "lq q={q} w=[{}]", list(weights))?;
                if *scale != 1.0 {
                    write!(f, " scale={scale}")?;
                }
                Ok(())
            }
            BlockGauge::MaxNorm { weights } => write!(f, "max w=[{}]", list(weights)),
            BlockGauge::QuadFormSqrt { matrix } => {
                let rows: Vec<String> = matrix.rows().iter().map(|r| format!("[{}]", list(r))).collect();
                write!(f, "quad Q=[{}]", rows.join(","))
            }
        }
    }
}

/// One term `f_j(x_{S_j})^{p_j}` of the body functional.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    /// 0-based coordinates, in the order the gauge reads them.
    pub coords: Vec<usize>,
    pub gauge: BlockGauge,
    pub exponent: f64,
}

/// A generalized superball in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BodySpec {
    n: usize,
    blocks: Vec<Block>,
}

impl BodySpec {
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Partition("empty body".into()));
        }
        let mut owner = vec![None; n];
        for (j, b) in blocks.iter().enumerate() {
            if !(b.exponent.is_finite() && b.exponent >= 1.0) {
                return Err(Error::InvalidGauge(format!(
                    "block {j}: exponent p = {} must be >= 1",
                    b.exponent
                )));
            }
            b.gauge.validate()?;
            if b.gauge.arity() != b.coords.len() || b.coords.is_empty() {
                return Err(Error::InvalidGauge(format!(
                    "block {j}: gauge arity {} does not match {} coordinates",
                    b.gauge.arity(),
                    b.coords.len()
                )));
            }
            for &c in &b.coords {
                if c >= n {
                    return Err(Error::Partition(format!("coordinate {} outside 1..={n}", c + 1)));
                }
                if let Some(prev) = owner[c].replace(j) {
                    return Err(Error::Partition(format!(
                        "coordinate {} appears in blocks {} and {}",
                        c + 1,
                        prev + 1,
                        j + 1
                    )));
                }
            }
        }
        if let Some(c) = owner.iter().position(Option::is_none) {
            return Err(Error::Partition(format!("coordinate {} is not covered", c + 1)));
        }
        Ok(Self { n, blocks })
    }

    /// The `l_p` ball: `n` singleton blocks `|x_i|^p`.
    pub fn lp(n: usize, p: f64) -> Result<Self> {
        let blocks = (0..n)
            .map(|i| Block {
                coords: vec![i],
                gauge: BlockGauge::abs(),
                exponent: p,
            })
            .collect();
        Self::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `Some(p)` when every block shares the exponent `p`.
    pub fn common_exponent(&self) -> Option<f64> {
        let p = self.blocks[0].exponent;
        self.blocks.iter().all(|b| b.exponent == p).then_some(p)
    }

    /// True for the plain `l_p` ball (singleton `|·|` blocks, common exponent).
    pub fn is_lp(&self) -> bool {
        self.common_exponent().is_some()
            && self
                .blocks
                .iter()
                .all(|b| b.coords.len() == 1 && b.gauge == BlockGauge::abs())
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Format(format!(
                "vector of length {} for a body in R^{}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Per-block gauge values `f_j(x_{S_j})`.
    pub fn block_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.block_values_unchecked(x))
    }

    pub(crate) fn block_values_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.blocks.len()];
        self.block_values_into(x, &mut out);
        out
    }

    pub(crate) fn block_values_into(&self, x: &[f64], out: &mut [f64]) {
        let mut buf = [0.0; MAX_BLOCK_ARITY];
        for (b, slot) in self.blocks.iter().zip(out.iter_mut()) {
            *slot = if b.coords.len() <= MAX_BLOCK_ARITY {
                for (dst, &c) in buf.iter_mut().zip(&b.coords) {
                    *dst = x[c];
                }
                b.gauge.eval(&buf[..b.coords.len()])
            } else {
                let v: Vec<f64> = b.coords.iter().map(|&c| x[c]).collect();
                b.gauge.eval(&v)
            };
        }
    }

    /// `G(x) = Σ_j f_j(x_{S_j})^{p_j}`.
    pub fn functional(&self, x: &[f64]) -> Result<f64> {
        Ok(self.functional_of_values(&self.block_values(x)?))
    }

    pub fn functional_of_values(&self, values: &[f64]) -> f64 {
        self.blocks.iter().zip(values).map(|(b, &f)| pow(f, b.exponent)).sum()
    }

    /// Minkowski functional `‖x‖ = inf{λ > 0 : G(x/λ) <= 1}`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        Ok(self.gauge_of_values(&self.block_values(x)?))
    }

    /// The gauge as a function of the block values. Each term of `G(x/λ)`
    /// is `f_j^{p_j} λ^{-p_j}`, so the gauge is strictly increasing in every `f_j`.
    pub fn gauge_of_values(&self, values: &[f64]) -> f64 {
        match self.common_exponent() {
            Some(p) => root(self.functional_of_values(values), p),
            None => self.gauge_bisect_values(values),
        }
    }

    /// Bisection route for the gauge, usable for any exponents.
    pub fn gauge_bisect(&self, x: &[f64]) -> Result<f64> {
        Ok(self.gauge_bisect_values(&self.block_values(x)?))
    }

    fn gauge_bisect_values(&self, values: &[f64]) -> f64 {
        let g = self.functional_of_values(values);
        if g == 0.0 {
            return 0.0;
        }
        let p_min = self.blocks.iter().map(|b| b.exponent).fold(f64::INFINITY, f64::min);
        let h = |lam: f64| -> f64 {
            self.blocks
                .iter()
                .zip(values)
                .map(|(b, &f)| pow(f / lam, b.exponent))
                .sum::<f64>()
        };
        // G(x/λ) >= 1 at λ = min(1, G^{1/p_min}) and < 1 at G^{1/p_min} + 1.
        let gp = g.powf(1.0 / p_min);
        let (mut lo, mut hi) = (gp.min(1.0), gp + 1.0);
        for _ in 0..BISECTION_MAX_ITERS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 1e-16 * hi {
                break;
            }
            if h(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Largest `|x_i|` over the body: `G(x) <= 1` forces `f_j <= 1` on every block.
    pub fn radius(&self) -> f64 {
        self.blocks.iter().map(|b| b.gauge.radius()).fold(0.0, f64::max)
    }

    /// Index of the block that owns each coordinate.
    pub fn block_of_coordinate(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (j, b) in self.blocks.iter().enumerate() {
            for &c in &b.coords {
                owner[c] = j;
            }
        }
        owner
    }

    /// Human-readable description.
    pub fn describe(&self) -> String {
        let mut out = format!("body in R^{} with {} blocks\n", self.n, self.blocks.len());
        for (j, b) in self.blocks.iter().enumerate() {
            let coords: Vec<String> = b.coords.iter().map(|c| (c + 1).to_string()).collect();
            out += &format!(
                "  block {:>3}: x[{}] {} p={}\n",
                j + 1,
                coords.join(","),
                b.gauge,
                b.exponent
            );
        }
        out
    }
}

impl fmt::Display for BodySpec {
    /// Writes the body in the block DSL accepted by [`parse_body_spec`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let coords: Vec<String> = b.coords.iter().map(|c| (c + 1).to_string()).collect();
            writeln!(f, "block [{}] {} p={}", coords.join(","), b.gauge, b.exponent)?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn pow(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

#[inline]
pub(crate) fn root(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x.sqrt()
    } else {
        x.powf(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed() -> BodySpec {
        BodySpec::new(
            3,
            vec![
                Block {
                    coords: vec![0, 1],
                    gauge: BlockGauge::lq(2.0, vec![1.0, 1.0], 1.0).unwrap(),
                    exponent: 2.0,
                },
                Block {
                    coords: vec![2],
                    gauge: BlockGauge::abs(),
                    exponent: 1.0,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn euclidean_gauge() {
        let b = BodySpec::lp(5, 2.0).unwrap();
        assert_eq!(b.gauge(&[3.0, 4.0, 0.0, 0.0, 0.0]).unwrap(), 5.0);
        assert_eq!(b.functional(&[0.0; 5]).unwrap(), 0.0);
        assert_eq!(b.gauge(&[0.0; 5]).unwrap(), 0.0);
    }

    #[test]
    fn two_unit_coordinates() {
        for p in [1.0, 1.5, 2.0, 3.0, 7.25] {
            let b = BodySpec::lp(4, p).unwrap();
            assert!((b.functional(&[1.0, 1.0, 0.0, 0.0]).unwrap() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_golden_ratio() {
        // λ⁻² + λ⁻¹ = 1  ⇒  λ² − λ − 1 = 0  ⇒  λ = (1 + √5)/2.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let g = mixed().gauge(&[1.0, 0.0, 1.0]).unwrap();
        assert!((g - phi).abs() < 1e-12 * phi, "{g}");
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(mixed().gauge(&[1.0, 2.0]), Err(Error::Format(_))));
        assert!(matches!(mixed().functional(&[1.0; 4]), Err(Error::Format(_))));
    }

    #[test]
    fn partition_errors() {
        let blk = |c: Vec<usize>| Block {
            gauge: BlockGauge::lq(2.0, vec![1.0; c.len()], 1.0).unwrap(),
            coords: c,
            exponent: 1.0,
        };
        assert!(matches!(
            BodySpec::new(3, vec![blk(vec![0, 1]), blk(vec![1, 2])]),
            Err(Error::Partition(_))
        ));
        assert!(matches!(
            BodySpec::new(3, vec![blk(vec![0, 1])]),
            Err(Error::Partition(_))
        ));
        let mut b = blk(vec![0]);
        b.exponent = 0.5;
        assert!(matches!(BodySpec::new(1, vec![b]), Err(Error::InvalidGauge(_))));
    }

    #[test]
    fn gauge_validation() {
        assert!(matches!(
            BlockGauge::lq(0.5, vec![1.0], 1.0),
            Err(Error::InvalidGauge(_))
        ));
        assert!(matches!(
            BlockGauge::lq(2.0, vec![0.0, 1.0], 1.0),
            Err(Error::InvalidGauge(_))
        ));
        assert!(matches!(BlockGauge::max(vec![-1.0]), Err(Error::InvalidGauge(_))));
        assert!(matches!(
            BlockGauge::quad(&[vec![1.0, 2.0], vec![2.0, 1.0]]),
            Err(Error::InvalidGauge(_))
        ));
    }

    #[test]
    fn monotonicity() {
        let lq = BlockGauge::lq(3.0, vec![1.0, 2.0, 5.0], 0.7).unwrap();
        for p in 0..3 {
            assert_eq!(lq.check_monotonicity(p).unwrap(), Monotonicity::Pass);
        }
        assert_eq!(
            BlockGauge::max(vec![1.0, 3.0]).unwrap().check_monotonicity(1).unwrap(),
            Monotonicity::Pass
        );
        let diag = BlockGauge::quad(&[vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(diag.check_monotonicity(0).unwrap(), Monotonicity::Pass);

        // 1 + a + 3a² is minimized at a = −1/6 with value 1 − 1/12.
        let q = BlockGauge::quad(&[vec![1.0, 0.5], vec![0.5, 3.0]]).unwrap();
        match q.check_monotonicity(0).unwrap() {
            Monotonicity::Fail { witness, value } => {
                assert!((witness[0] - 1.0).abs() < 1e-15);
                assert!((witness[1] + 1.0 / 6.0).abs() < 1e-14);
                assert!((value * value - 11.0 / 12.0).abs() < 1e-14);
                assert!((q.eval(&witness) - value).abs() < 1e-14);
            }
            Monotonicity::Pass => panic!("cross term must fail"),
        }
        assert!(matches!(q.default_pivot(), Err(Error::Monotonicity { .. })));
        assert!(q.check_monotonicity(2).is_err());
    }

    #[test]
    fn default_pivot_prefers_smallest_axis_value() {
        let lq = BlockGauge::lq(2.0, vec![4.0, 1.0, 1.0], 1.0).unwrap();
        assert_eq!(lq.default_pivot().unwrap(), 1);
        assert_eq!(BlockGauge::abs().default_pivot().unwrap(), 0);
    }

    #[test]
    fn integer_minima() {
        let l2 = BlockGauge::lq(2.0, vec![1.0, 1.0], 1.0).unwrap();
        let m = l2.min_integer_gauge().unwrap();
        assert_eq!(m.rho, 1.0);
        assert_eq!(m.witnesses, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);

        let w = BlockGauge::lq(1.0, vec![2.0, 3.0], 1.0).unwrap();
        let m = w.min_integer_gauge().unwrap();
        assert_eq!(m.rho, 2.0);
        assert_eq!(m.witnesses, vec![vec![-1, 0], vec![1, 0]]);

        // Q(1,-1) = 1 + 1 - 1.8 = 0.2; frozen from a sweep of the |z| <= 5 box.
        let q = BlockGauge::quad(&[vec![1.0, 0.9], vec![0.9, 1.0]]).unwrap();
        let m = q.min_integer_gauge().unwrap();
        assert!((m.rho - 0.2f64.sqrt()).abs() < 1e-12);
        assert_eq!(m.witnesses, vec![vec![-1, 1], vec![1, -1]]);
        let mut best = f64::INFINITY;
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                if (a, b) != (0, 0) {
                    best = best.min(q.eval(&[a as f64, b as f64]));
                }
            }
        }
        assert!((best - m.rho).abs() < 1e-15);
    }

    #[test]
    fn arity_guard() {
        let g = BlockGauge::lq(2.0, vec![1.0; 9], 1.0).unwrap();
        assert!(matches!(g.min_integer_gauge(), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn radius_bounds() {
        let q = BlockGauge::quad(&[vec![1.0, 0.9], vec![0.9, 1.0]]).unwrap();
        assert!((q.radius() - (1.0f64 / 0.19).sqrt()).abs() < 1e-12);
        let lq = BlockGauge::lq(2.0, vec![4.0, 1.0], 2.0).unwrap();
        assert!((lq.radius() - 0.5).abs() < 1e-15);
    }
}
