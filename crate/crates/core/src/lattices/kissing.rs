//! Exact minimal-vector counts `N_s(Λ, ‖·‖)`.
//!
//! Two exact methods are available:
//! - `coset-exact` walks the group `Λ/Zⁿ` and minimizes the gauge over every
//!   coset of `Zⁿ` blockwise;
//! - `basis-enum` runs a depth-first search over a triangular basis of `tΛ`,
//!   pruned by the partial functional, for groups too large to close.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::coset::{CosetMinimizer, CosetSubgroup, MAX_COSETS};
use super::modbasis::ModularBasis;
use super::{fractional_support, oracle, LatticeD};
use crate::bodies::{pow, root, BodySpec, MAX_BLOCK_ARITY};
use crate::error::{Error, Result};
use crate::ties_with;

/// Reports keep at most this many witnesses; the count is always exact.
pub const MAX_WITNESSES: usize = 10_000;
const MAX_ANOMALY_EXAMPLES: usize = 10;
const SWEEP_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    CosetExact,
    BasisEnumeration,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::CosetExact => "coset-exact",
            Method::BasisEnumeration => "basis-enum",
            Method::BruteForce => "brute-force",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KissingReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub a_d: usize,
    pub t: i64,
    pub scale: f64,
    /// Minimal gauge over nonzero lattice vectors.
    pub nu: f64,
    /// Number of nonzero lattice vectors attaining `nu`.
    pub count: u128,
    /// Minimal vectors as numerators over `t` (before `scale`), sorted, capped.
    pub witnesses: Vec<Vec<i64>>,
    pub witnesses_truncated: bool,
    /// `1/ν`, the scale at which the minimum becomes 1.
    pub rescale: f64,
    pub method: Method,
    pub elapsed: Duration,
    /// `|Λ/Zⁿ|` when the group was closed.
    pub cosets: Option<usize>,
    /// Minimal vectors whose fractional part has support in `1..d`.
    pub anomalies: u128,
    pub anomaly_examples: Vec<Vec<i64>>,
    /// Coset representatives with support in `1..d` (coset method only).
    pub anomalous_cosets: Option<u128>,
    /// `min G` over lattice vectors outside `Zⁿ` (coset method only).
    pub min_functional_fractional: Option<f64>,
    /// `min G` over nonzero integer vectors (coset method only).
    pub min_functional_integral: Option<f64>,
    /// Oracle half-width in units of `1/t` numerators divided by `t`.
    pub oracle_box: Option<i64>,
    /// Whether the oracle box provably contains every minimal vector.
    pub box_sufficient: Option<bool>,
}

impl KissingReport {
    pub(crate) fn empty(lat: &LatticeD, method: Method) -> Self {
        Self {
            n: lat.n(),
            k: lat.code().k(),
            d: lat.d(),
            a_d: lat.a_d(),
            t: lat.t(),
            scale: lat.scale(),
            nu: f64::INFINITY,
            count: 0,
            witnesses: Vec::new(),
            witnesses_truncated: false,
            rescale: 0.0,
            method,
            elapsed: Duration::ZERO,
            cosets: None,
            anomalies: 0,
            anomaly_examples: Vec::new(),
            anomalous_cosets: None,
            min_functional_fractional: None,
            min_functional_integral: None,
            oracle_box: None,
            box_sufficient: None,
        }
    }

    pub(crate) fn finish(&mut self, started: Instant) {
        self.witnesses.sort();
        self.anomaly_examples.sort();
        self.rescale = 1.0 / self.nu;
        self.elapsed = started.elapsed();
    }

    /// The witness set is closed under negation.
    pub fn witnesses_symmetric(&self) -> bool {
        self.witnesses_truncated
            || self.witnesses.iter().all(|w| {
                let neg: Vec<i64> = w.iter().map(|v| -v).collect();
                self.witnesses.binary_search(&neg).is_ok()
            })
    }
}

/// Running minimum with a tie-tolerant count.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MinCount {
    pub value: f64,
    pub count: u128,
}

impl MinCount {
    pub const EMPTY: Self = Self {
        value: f64::INFINITY,
        count: 0,
    };

    pub fn push(&mut self, value: f64, count: u128) {
        if ties_with(value, self.value) {
            self.value = self.value.min(value);
            self.count += count;
        } else if value < self.value {
            *self = Self { value, count };
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.push(other.value, other.count);
        self
    }
}

pub(crate) fn check_inputs(lat: &LatticeD, spec: &BodySpec) -> Result<()> {
    if spec.n() != lat.n() {
        return Err(Error::Format(format!(
            "body in R^{} for a lattice in R^{}",
            spec.n(),
            lat.n()
        )));
    }
    if let Some(b) = spec.blocks().iter().find(|b| b.coords.len() > MAX_BLOCK_ARITY) {
        return Err(Error::ResourceLimit {
            what: "block arity",
            reached: b.coords.len() as u128,
            limit: MAX_BLOCK_ARITY as u128,
        });
    }
    Ok(())
}

/// Counts minimal vectors, preferring the coset method and falling back to
/// basis enumeration when the group `Λ/Zⁿ` exceeds [`MAX_COSETS`].
pub fn kissing_count(lat: &LatticeD, spec: &BodySpec) -> Result<KissingReport> {
    check_inputs(lat, spec)?;
    if lat.basis().quotient_size() <= MAX_COSETS {
        kissing_count_with(lat, spec, Method::CosetExact)
    } else {
        kissing_count_with(lat, spec, Method::BasisEnumeration)
    }
}

/// Counts minimal vectors with a fixed method. The brute-force oracle picks
/// the smallest box that provably contains every minimal vector.
pub fn kissing_count_with(lat: &LatticeD, spec: &BodySpec, method: Method) -> Result<KissingReport> {
    check_inputs(lat, spec)?;
    match method {
        Method::CosetExact => coset_exact(lat, spec),
        Method::BasisEnumeration => basis_enum(lat, spec),
        Method::BruteForce => {
            let upper = upper_bound(lat, spec, &CosetMinimizer::new(spec, lat.t(), lat.scale())?);
            let r = oracle::required_box(lat, spec, upper);
            oracle::brute_force_kissing(lat, spec, (r - 1e-9).ceil().max(1.0) as i64)
        }
    }
}

/// An upper bound on `ν`: the best of the integer minimum and every `c/t`, `c ∈ C_d`.
pub(crate) fn upper_bound(lat: &LatticeD, spec: &BodySpec, m: &CosetMinimizer<'_>) -> f64 {
    let f = lat.scale() / lat.t() as f64;
    let (mut best, _, _) = m.zero_coset();
    for c in lat.generators() {
        let x: Vec<f64> = c.iter().map(|&v| v as f64 * f).collect();
        best = best.min(spec.gauge_of_values(&spec.block_values_unchecked(&x)));
    }
    best
}

fn coset_exact(lat: &LatticeD, spec: &BodySpec) -> Result<KissingReport> {
    let started = Instant::now();
    let group = CosetSubgroup::closure(lat, MAX_COSETS)?;
    let m = CosetMinimizer::new(spec, lat.t(), lat.scale())?;
    let d = lat.d();
    let (zero_value, zero_count, zero_g) = m.zero_coset();

    // Fixed chunking with an in-order final merge keeps the result
    // independent of thread count and scheduling.
    #[derive(Clone, Copy)]
    struct Partial {
        best: MinCount,
        g_min: f64,
        anomalous: u128,
    }
    let ids: Vec<usize> = (1..group.len()).collect();
    let partials: Vec<Partial> = ids
        .par_chunks(SWEEP_CHUNK)
        .map(|chunk| {
            let mut p = Partial {
                best: MinCount::EMPTY,
                g_min: f64::INFINITY,
                anomalous: 0,
            };
            for &i in chunk {
                let rep = group.get(i);
                let (v, g, c) = m.coset_min(rep);
                p.best.push(v, c);
                p.g_min = p.g_min.min(g);
                if rep.iter().filter(|&&r| r != 0).count() < d {
                    p.anomalous += 1;
                }
            }
            p
        })
        .collect();
    let mut best = MinCount {
        value: zero_value,
        count: zero_count,
    };
    let mut g_frac = f64::INFINITY;
    let mut anomalous = 0u128;
    for p in &partials {
        best = best.merge(p.best);
        g_frac = g_frac.min(p.g_min);
        anomalous += p.anomalous;
    }

    let mut report = KissingReport::empty(lat, Method::CosetExact);
    report.nu = best.value;
    report.count = best.count;
    report.cosets = Some(group.len());
    report.anomalous_cosets = Some(anomalous);
    report.min_functional_fractional = Some(g_frac);
    report.min_functional_integral = Some(zero_g);

    // Second pass: cosets attaining the minimum, in BFS order.
    let minimal: Vec<(usize, u128)> = ids
        .par_iter()
        .filter_map(|&i| {
            let (v, _, c) = m.coset_min(group.get(i));
            ties_with(v, best.value).then_some((i, c))
        })
        .collect();
    if ties_with(zero_value, best.value) {
        m.zero_coset_witnesses(lat.n(), &mut report.witnesses, MAX_WITNESSES);
    }
    for &(i, c) in &minimal {
        let rep = group.get(i);
        if rep.iter().filter(|&&r| r != 0).count() < d {
            report.anomalies += c;
            if report.anomaly_examples.len() < MAX_ANOMALY_EXAMPLES {
                report.anomaly_examples.push(rep.iter().map(|&r| r as i64).collect());
            }
        }
        if report.witnesses.len() < MAX_WITNESSES {
            m.coset_witnesses(rep, &mut report.witnesses, MAX_WITNESSES);
        }
    }
    report.witnesses_truncated = (report.witnesses.len() as u128) < report.count;
    report.finish(started);
    Ok(report)
}

/// Depth-first enumeration state for [`basis_enum`].
struct Search<'a> {
    spec: &'a BodySpec,
    basis: ModularBasis,
    t: i64,
    /// Real coordinate per numerator unit: `scale / t`.
    unit: f64,
    d: usize,
    /// Block owning each processing position and whether it closes the block.
    block_at: Vec<usize>,
    closes: Vec<bool>,
    radius: Vec<f64>,
    /// Current bound on `ν`, widened by the tie tolerance when pruning.
    gamma: f64,
    best: MinCount,
    witnesses: Vec<Vec<i64>>,
    anomalies: u128,
    anomaly_examples: Vec<Vec<i64>>,
    y: Vec<i64>,
    acc: Vec<Vec<i64>>,
    nodes: u64,
}

impl Search<'_> {
    fn slack(&self) -> f64 {
        self.gamma * (1.0 + 4.0 * crate::TIE_TOL) + 1e-15
    }

    /// Values of block `b` in processing order.
    fn block_value(&self, b: usize, end: usize) -> f64 {
        let k = self.spec.blocks()[b].coords.len();
        let mut buf = [0.0; MAX_BLOCK_ARITY];
        for (i, slot) in buf.iter_mut().take(k).enumerate() {
            *slot = self.y[end + 1 - k + i] as f64 * self.unit;
        }
        self.spec.blocks()[b].gauge.eval(&buf[..k])
    }

    fn visit(&mut self, j: usize, partial: f64, values: &mut Vec<f64>) {
        self.nodes += 1;
        let n = self.y.len();
        if j == n {
            if self.y.iter().all(|&v| v == 0) {
                return;
            }
            let v = self.spec.gauge_of_values(values);
            self.record(v);
            return;
        }
        let b = self.block_at[j];
        let p = self.spec.blocks()[b].exponent;
        let budget = (1.0 - partial).max(0.0);
        let bound = self.radius[b] * self.slack() * root(budget, p) / self.unit;
        let g = self.basis.diag()[j];
        let base = self.acc[j][j];
        // Candidates base + m·g with |y| <= bound, nearest to zero first.
        let lo = ((-bound - base as f64) / g as f64).ceil() as i64;
        let hi = ((bound - base as f64) / g as f64).floor() as i64;
        if lo > hi {
            return;
        }
        let m0 = ((-(base as f64)) / g as f64).round().clamp(lo as f64, hi as f64) as i64;
        let mut order = Vec::with_capacity((hi - lo + 1) as usize);
        order.push(m0);
        let (mut a, mut c) = (m0 - 1, m0 + 1);
        while a >= lo || c <= hi {
            let ya = (base + a * g).abs();
            let yc = (base + c * g).abs();
            if c > hi || (a >= lo && ya <= yc) {
                order.push(a);
                a -= 1;
            } else {
                order.push(c);
                c += 1;
            }
        }
        for m in order {
            let yj = base + m * g;
            self.y[j] = yj;
            let (head, tail) = self.acc.split_at_mut(j + 1);
            let row = &self.basis.rows()[j];
            let (cur, next) = (&head[j], &mut tail[0]);
            for k in j + 1..n {
                next[k] = cur[k] + m * row[k];
            }
            let mut next_partial = partial;
            if self.closes[j] {
                let f = self.block_value(b, j);
                values[b] = f;
                next_partial += pow(f / self.slack(), p);
                if next_partial > 1.0 {
                    values[b] = 0.0;
                    continue;
                }
            }
            self.visit(j + 1, next_partial, values);
            if self.closes[j] {
                values[b] = 0.0;
            }
        }
        self.y[j] = 0;
    }

    fn record(&mut self, v: f64) {
        let before = self.best.value;
        self.best.push(v, 1);
        if !ties_with(self.best.value, before) {
            self.witnesses.clear();
            self.anomalies = 0;
            self.anomaly_examples.clear();
        }
        if !ties_with(v, self.best.value) {
            return;
        }
        self.gamma = self.gamma.min(self.best.value);
        let order = self.basis.order();
        let mut w = vec![0i64; self.y.len()];
        for (pos, &c) in order.iter().enumerate() {
            w[c] = self.y[pos];
        }
        let support = fractional_support(&w, self.t);
        if support > 0 && support < self.d {
            self.anomalies += 1;
            if self.anomaly_examples.len() < MAX_ANOMALY_EXAMPLES {
                self.anomaly_examples
                    .push(w.iter().map(|v| v.rem_euclid(self.t)).collect());
            }
        }
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }
}

fn basis_enum(lat: &LatticeD, spec: &BodySpec) -> Result<KissingReport> {
    let started = Instant::now();
    let m = CosetMinimizer::new(spec, lat.t(), lat.scale())?;
    let gamma = upper_bound(lat, spec, &m);

    // Blocks contiguous in the processing order so that each block value is
    // known as soon as its last coordinate is fixed.
    let mut order = Vec::with_capacity(lat.n());
    let mut block_at = Vec::with_capacity(lat.n());
    let mut closes = Vec::with_capacity(lat.n());
    for (b, block) in spec.blocks().iter().enumerate() {
        for (i, &c) in block.coords.iter().enumerate() {
            order.push(c);
            block_at.push(b);
            closes.push(i + 1 == block.coords.len());
        }
    }
    let basis = ModularBasis::new(lat.generators(), lat.t(), &order);
    let n = lat.n();
    let mut search = Search {
        spec,
        basis,
        t: lat.t(),
        unit: lat.scale() / lat.t() as f64,
        d: lat.d(),
        block_at,
        closes,
        radius: spec.blocks().iter().map(|b| b.gauge.radius()).collect(),
        gamma,
        best: MinCount::EMPTY,
        witnesses: Vec::new(),
        anomalies: 0,
        anomaly_examples: Vec::new(),
        y: vec![0; n],
        acc: vec![vec![0; n]; n + 1],
        nodes: 0,
    };
    let mut values = vec![0.0; spec.blocks().len()];
    search.visit(0, 0.0, &mut values);
    if search.best.count == 0 {
        return Err(Error::Numerical(
            "enumeration found no vector under the upper bound".into(),
        ));
    }

    let mut report = KissingReport::empty(lat, Method::BasisEnumeration);
    report.nu = search.best.value;
    report.count = search.best.count;
    report.witnesses = search.witnesses;
    report.witnesses_truncated = (report.witnesses.len() as u128) < report.count;
    report.anomalies = search.anomalies;
    report.anomaly_examples = search.anomaly_examples;
    report.finish(started);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2codes::named_code;

    fn lat(name: &str, t: i64) -> LatticeD {
        LatticeD::new(&named_code(name).unwrap(), t).unwrap()
    }

    #[test]
    fn mincount_ties() {
        let mut m = MinCount::EMPTY;
        m.push(2.0, 3);
        m.push(1.0, 2);
        m.push(1.0 + 1e-12, 5);
        m.push(1.5, 7);
        assert_eq!(m.count, 7);
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn integer_lattice_l1() {
        // repetition(4) at t = 4 under l1: c/4 has l1 norm 1, as do ±e_i.
        let l = lat("repetition(4)", 4);
        let spec = BodySpec::lp(4, 1.0).unwrap();
        let r = kissing_count(&l, &spec).unwrap();
        assert_eq!(r.method, Method::CosetExact);
        assert_eq!(r.nu, 1.0);
        // ±e_i and ±c/4; the coset of c/2 has minimum 2.
        assert_eq!(r.count, 10);
        assert!(r.witnesses_symmetric());
    }

    #[test]
    fn methods_agree_on_small_lattices() {
        for (name, t, p) in [
            ("hamming8", 2, 2.0),
            ("hamming8", 4, 1.0),
            ("parity(8)", 3, 2.0),
            ("repetition(4)", 3, 1.5),
            ("hamming8", 3, 3.0),
        ] {
            let l = lat(name, t);
            let spec = BodySpec::lp(l.n(), p).unwrap();
            let a = kissing_count_with(&l, &spec, Method::CosetExact).unwrap();
            let b = kissing_count_with(&l, &spec, Method::BasisEnumeration).unwrap();
            assert!(ties_with(a.nu, b.nu), "{name} t={t} p={p}: {} vs {}", a.nu, b.nu);
            assert_eq!(a.count, b.count, "{name} t={t} p={p}");
            assert_eq!(a.witnesses, b.witnesses, "{name} t={t} p={p}");
            assert_eq!(a.anomalies, b.anomalies, "{name} t={t} p={p}");
        }
    }

    #[test]
    fn e8_from_hamming() {
        let l = lat("hamming8", 2);
        let r = kissing_count(&l, &BodySpec::lp(8, 2.0).unwrap()).unwrap();
        assert_eq!(r.count, 240);
        assert_eq!(r.nu, 1.0);
        assert_eq!(r.cosets, Some(16));
        assert_eq!(r.anomalies, 0);
    }

    #[test]
    fn dimension_mismatch() {
        let l = lat("hamming8", 2);
        assert!(matches!(
            kissing_count(&l, &BodySpec::lp(7, 2.0).unwrap()),
            Err(Error::Format(_))
        ));
    }
}
