//! End-to-end checks that the minimum-weight codewords, scaled by `1/t`, are
//! minimal vectors of `Λ(C, t)` for `l_p` balls and for block bodies.

use crate::asymptotics;
use crate::bodies::{pow, BlockGauge, BodySpec, Monotonicity};
use crate::error::{Error, Result};
use crate::gf2codes::BinaryCode;
use crate::lattices::{choose_t_lp, kissing_count, KissingReport, LatticeD};
use crate::ties_with;

/// One named check; non-gating checks are reported but do not decide PASS.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: Option<bool>,
    pub gating: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub kind: &'static str,
    pub code: String,
    pub body: String,
    pub t: i64,
    /// The denominator was raised to 2 from a smaller value.
    pub t_clamped: bool,
    /// Gauge every minimum-weight codeword over `t` should have.
    pub expected_nu: f64,
    /// Number of `c ∈ C_d` with `‖c/t‖ = ν`.
    pub codewords_minimal: usize,
    /// Largest `‖c/t‖` over `C_d`.
    pub codeword_gauge_max: f64,
    pub kissing: KissingReport,
    pub plan: Option<Theorem4Plan>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(|c| c.pass == Some(true))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Gauges of `c/t` for every `c ∈ C_d`.
fn codeword_gauges(lat: &LatticeD, spec: &BodySpec) -> Vec<f64> {
    lat.generators()
        .iter()
        .map(|c| spec.gauge(&lat.to_real(c)).expect("dimensions checked"))
        .collect()
}

fn common_checks(lat: &LatticeD, spec: &BodySpec, kiss: &KissingReport) -> (Vec<Check>, usize, f64) {
    let gauges = codeword_gauges(lat, spec);
    let minimal = gauges.iter().filter(|&&g| ties_with(g, kiss.nu)).count();
    let max = gauges.iter().copied().fold(0.0, f64::max);
    let checks = vec![
        Check {
            name: "codewords_minimal",
            pass: Some(minimal == gauges.len()),
            gating: true,
            detail: format!("{minimal} of {} codewords c/t attain nu = {}", gauges.len(), kiss.nu),
        },
        Check {
            name: "count_at_least_a_d",
            pass: Some(kiss.count >= lat.a_d() as u128),
            gating: true,
            detail: format!(
                "N_s = {} vs A_d = {} (2*A_d = {})",
                kiss.count,
                lat.a_d(),
                2 * lat.a_d()
            ),
        },
        Check {
            name: "fractional_support",
            pass: Some(kiss.anomalies == 0 && kiss.anomalous_cosets.unwrap_or(0) == 0),
            gating: false,
            detail: format!(
                "{} minimal vectors and {} cosets with fractional support below d = {}",
                kiss.anomalies,
                kiss.anomalous_cosets.map_or("unknown".to_string(), |c| c.to_string()),
                lat.d()
            ),
        },
    ];
    (checks, minimal, max)
}

/// `l_p` ball with `t = ⌈d^{1/p}⌉`: checks that `(1/t)C_d` are minimal vectors,
/// that there are at least `A_d` of them, and that the minimum is `d^{1/p}/t`.
pub fn verify_theorem3(code: &BinaryCode, p: f64) -> Result<VerificationReport> {
    let d = code.min_distance()?;
    let t = choose_t_lp(p, d)?;
    let lat = LatticeD::new(code, t)?;
    let spec = BodySpec::lp(code.n(), p)?;
    let kiss = kissing_count(&lat, &spec)?;
    let expected = (d as f64).powf(1.0 / p) / t as f64;
    let (mut checks, minimal, max) = common_checks(&lat, &spec, &kiss);
    checks.push(Check {
        name: "rescaled_minimum_is_one",
        pass: Some(ties_with(kiss.nu / expected, 1.0)),
        gating: true,
        detail: format!("nu / (d^(1/p)/t) = {}", kiss.nu / expected),
    });
    Ok(VerificationReport {
        kind: "theorem3",
        code: format!("[{}, {}, {}]", code.n(), code.k(), d),
        body: format!("l_{p}"),
        t,
        t_clamped: (d as f64).powf(1.0 / p) <= 1.0,
        expected_nu: expected,
        codewords_minimal: minimal,
        codeword_gauge_max: max,
        kissing: kiss,
        plan: None,
        checks,
    })
}

/// How the embedding coordinates are chosen inside the selected blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotPolicy {
    /// Monotonicity-verified coordinate of smallest `f(e_i)`.
    #[default]
    Default,
    /// A fixed 0-based position within each block.
    Fixed(usize),
}

/// Block selection and denominator for embedding a code into a block body.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem4Plan {
    /// Index of the selected gauge among distinct gauges, in order of first appearance.
    pub j0: usize,
    pub t0_size: usize,
    /// Selected exponent.
    pub j1: f64,
    pub t1_size: usize,
    /// Number of blocks, distinct gauges, distinct exponents, largest arity.
    pub blocks: usize,
    pub m: usize,
    pub l: usize,
    pub k: usize,
    /// Blocks receiving a code coordinate, in coordinate order.
    pub t1_blocks: Vec<usize>,
    pub pivot: usize,
    /// Embedding coordinates (0-based), one per selected block.
    pub positions: Vec<usize>,
    /// `f(e_pivot)^{p} · d`.
    pub nu_n: f64,
    /// Smallest block gauge over nonzero integer points, over all blocks.
    pub rho: f64,
    pub t: i64,
    pub mu: f64,
    pub rate: f64,
}

impl Theorem4Plan {
    /// `|T₀|·m >= blocks` and `|T₁|·l >= |T₀|`.
    pub fn pigeonhole_holds(&self) -> bool {
        self.t0_size * self.m >= self.blocks && self.t1_size * self.l >= self.t0_size
    }
}

/// Smallest integer at least `x`, treating values within the tie tolerance of
/// an integer as that integer.
fn ceil_tol(x: f64) -> i64 {
    let r = x.round();
    if ties_with(x, r) {
        r as i64
    } else {
        x.ceil() as i64
    }
}

pub fn plan_theorem4(spec: &BodySpec, code: &BinaryCode, policy: PivotPolicy) -> Result<Theorem4Plan> {
    let blocks = spec.blocks();
    let mut families: Vec<(&BlockGauge, Vec<usize>)> = Vec::new();
    for (j, b) in blocks.iter().enumerate() {
        match families.iter_mut().find(|(g, _)| **g == b.gauge) {
            Some((_, members)) => members.push(j),
            None => families.push((&b.gauge, vec![j])),
        }
    }
    let mut exponents: Vec<f64> = blocks.iter().map(|b| b.exponent).collect();
    exponents.sort_by(f64::total_cmp);
    exponents.dedup();

    // Most frequent gauge, earliest on ties.
    let (j0, (gauge, t0)) = families
        .iter()
        .enumerate()
        .fold(None::<(usize, &(&BlockGauge, Vec<usize>))>, |best, (i, f)| match best {
            Some((_, b)) if b.1.len() >= f.1.len() => best,
            _ => Some((i, f)),
        })
        .expect("a body has at least one block");
    let gauge: &BlockGauge = gauge;

    // Most frequent exponent inside T₀, smallest on ties.
    let mut tallies: Vec<(f64, Vec<usize>)> = Vec::new();
    for &j in t0 {
        let p = blocks[j].exponent;
        match tallies.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => v.push(j),
            None => tallies.push((p, vec![j])),
        }
    }
    tallies.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.total_cmp(&b.0)));
    let (j1, t1) = tallies.swap_remove(0);

    let need = code.n();
    if t1.len() < need {
        return Err(Error::InsufficientBlocks { need, have: t1.len() });
    }
    let pivot = match policy {
        PivotPolicy::Default => gauge.default_pivot()?,
        PivotPolicy::Fixed(i) => match gauge.check_monotonicity(i)? {
            Monotonicity::Pass => i,
            Monotonicity::Fail { witness, .. } => return Err(Error::Monotonicity { witness }),
        },
    };
    let mut chosen = t1.clone();
    chosen.sort_by_key(|&j| blocks[j].coords.iter().min().copied());
    chosen.truncate(need);
    let positions: Vec<usize> = chosen.iter().map(|&j| blocks[j].coords[pivot]).collect();

    let d = code.min_distance()?;
    let nu_n = pow(gauge.axis_value(pivot), j1) * d as f64;
    let mut rho = f64::INFINITY;
    for b in blocks {
        rho = rho.min(b.gauge.min_integer_gauge()?.rho);
    }
    let t = ceil_tol(nu_n).max(ceil_tol(1.0 / rho)).max(2);
    let k = blocks.iter().map(|b| b.coords.len()).max().unwrap_or(1);
    let mu = asymptotics::mu(k, exponents.len(), families.len())?;
    Ok(Theorem4Plan {
        j0,
        t0_size: t0.len(),
        j1,
        t1_size: t1.len(),
        blocks: blocks.len(),
        m: families.len(),
        l: exponents.len(),
        k,
        t1_blocks: chosen,
        pivot,
        positions,
        nu_n,
        rho,
        t,
        mu,
        rate: asymptotics::constant_c(mu)?,
    })
}

/// Embeds the code into the selected pivot coordinates and checks that the
/// embedded `(1/t)C_d` are minimal vectors of the body's gauge.
pub fn verify_theorem4(spec: &BodySpec, code: &BinaryCode, policy: PivotPolicy) -> Result<VerificationReport> {
    let plan = plan_theorem4(spec, code, policy)?;
    if !plan.pigeonhole_holds() {
        return Err(Error::Numerical("pigeonhole counts violated".into()));
    }
    let embedded = code.lengthen(&plan.positions, spec.n())?;
    let lat = LatticeD::new(&embedded, plan.t)?;
    let kiss = kissing_count(&lat, spec)?;
    let (mut checks, minimal, max) = common_checks(&lat, spec, &kiss);

    let p = plan.j1;
    let t_p = pow(plan.t as f64, p);
    let frac_bound = plan.nu_n / t_p;
    let int_bound = pow(plan.rho, p);
    let ge = |a: f64, b: f64| a >= b || ties_with(a, b);
    checks.push(Check {
        name: "fractional_functional_bound",
        pass: kiss.min_functional_fractional.map(|g| ge(g, frac_bound)),
        gating: false,
        detail: format!(
            "min G over fractional vectors = {} vs nu_n/t^p = {frac_bound}",
            kiss.min_functional_fractional
                .map_or("not computed".to_string(), |g| g.to_string())
        ),
    });
    checks.push(Check {
        name: "integral_functional_bound",
        pass: kiss.min_functional_integral.map(|g| ge(g, int_bound)),
        gating: false,
        detail: format!(
            "min G over nonzero integer vectors = {} vs rho^p = {int_bound}",
            kiss.min_functional_integral
                .map_or("not computed".to_string(), |g| g.to_string())
        ),
    });
    checks.push(Check {
        name: "pigeonhole",
        pass: Some(plan.pigeonhole_holds()),
        gating: true,
        detail: format!(
            "|T0|*m = {}*{} >= {} blocks, |T1|*l = {}*{} >= |T0|",
            plan.t0_size, plan.m, plan.blocks, plan.t1_size, plan.l
        ),
    });
    let expected = spec.gauge(&lat.to_real(&lat.generators()[0]))?;
    Ok(VerificationReport {
        kind: "theorem4",
        code: format!("[{}, {}, {}]", code.n(), code.k(), code.min_distance()?),
        body: spec.to_string().trim_end().replace('\n', "; "),
        t: plan.t,
        t_clamped: ceil_tol(plan.nu_n).max(ceil_tol(1.0 / plan.rho)) < 2,
        expected_nu: expected,
        codewords_minimal: minimal,
        codeword_gauge_max: max,
        kissing: kiss,
        plan: Some(plan),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::parse_body_spec;
    use crate::gf2codes::named_code;

    fn blocks(count: usize, line: impl Fn(usize, usize) -> String) -> String {
        (0..count)
            .map(|i| line(2 * i + 1, 2 * i + 2))
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn e8_theorem3() {
        let r = verify_theorem3(&named_code("hamming8").unwrap(), 2.0).unwrap();
        assert_eq!(r.t, 2);
        assert_eq!(r.kissing.count, 240);
        assert!(r.pass(), "{:?}", r.checks);
    }

    #[test]
    fn hamming_l1() {
        let r = verify_theorem3(&named_code("hamming8").unwrap(), 1.0).unwrap();
        assert_eq!(r.t, 4);
        assert_eq!(r.kissing.nu, 1.0);
        assert!(r.kissing.count >= 28);
        assert_eq!(r.codewords_minimal, 14);
    }

    #[test]
    fn homogeneous_plan_reduces_to_lp() {
        let spec = BodySpec::lp(8, 2.0).unwrap();
        let code = named_code("hamming8").unwrap();
        let plan = plan_theorem4(&spec, &code, PivotPolicy::Default).unwrap();
        assert_eq!((plan.m, plan.l, plan.t1_size), (1, 1, 8));
        assert_eq!(plan.nu_n, 4.0);
        assert_eq!(plan.t, 4);
        assert_eq!(plan.positions, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn mixed_plan_selection() {
        let l2 = blocks(12, |a, b| format!("block [{a},{b}] lq q=2 w=[1,1] p=2"));
        let mx: String = (12..16)
            .map(|i| format!("\nblock [{},{}] max w=[1,1] p=1", 2 * i + 1, 2 * i + 2))
            .collect();
        let spec = parse_body_spec(&(l2 + &mx)).unwrap();
        let plan = plan_theorem4(&spec, &named_code("hamming8").unwrap(), PivotPolicy::Default).unwrap();
        assert_eq!(plan.j0, 0);
        assert_eq!(plan.j1, 2.0);
        assert_eq!((plan.t0_size, plan.t1_size), (12, 12));
        assert_eq!((plan.m, plan.l, plan.k), (2, 2, 2));
        assert!(plan.pigeonhole_holds());
        assert_eq!(plan.t1_blocks, (0..8).collect::<Vec<_>>());
        assert_eq!(plan.positions, (0..8).map(|i| 2 * i).collect::<Vec<_>>());
        assert_eq!(plan.mu, 0.125);
    }

    #[test]
    fn exponent_tie_prefers_smaller() {
        let text = "block [1] lq q=1 w=[1] p=3\nblock [2] lq q=1 w=[1] p=2\nblock [3] lq q=1 w=[1] p=3\nblock [4] lq q=1 w=[1] p=2";
        let spec = parse_body_spec(text).unwrap();
        let plan = plan_theorem4(&spec, &named_code("repetition(2)").unwrap(), PivotPolicy::Default).unwrap();
        assert_eq!(plan.j1, 2.0);
        assert_eq!(plan.positions, vec![1, 3]);
    }

    #[test]
    fn insufficient_blocks() {
        let spec = BodySpec::lp(4, 2.0).unwrap();
        assert_eq!(
            plan_theorem4(&spec, &named_code("hamming8").unwrap(), PivotPolicy::Default),
            Err(Error::InsufficientBlocks { need: 8, have: 4 })
        );
    }

    #[test]
    fn cross_term_quadratic_fails_monotonicity() {
        let q = "Q=[[1,0.9],[0.9,1]]";
        let spec = parse_body_spec(&blocks(4, |a, b| format!("block [{a},{b}] quad {q} p=2"))).unwrap();
        match plan_theorem4(&spec, &named_code("repetition(4)").unwrap(), PivotPolicy::Default) {
            Err(Error::Monotonicity { witness }) => assert_eq!(witness.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ceiling_with_tolerance() {
        assert_eq!(ceil_tol(4.0 + 1e-13), 4);
        assert_eq!(ceil_tol(4.1), 5);
        assert_eq!(ceil_tol(0.3), 1);
    }
}
