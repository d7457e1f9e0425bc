//! Brute-force enumeration of lattice points in a box. Used as the reference
//! for the exact methods on small lattices.

use std::time::Instant;

use rayon::prelude::*;

use super::kissing::{check_inputs, KissingReport, Method, MinCount, MAX_WITNESSES};
use super::{fractional_support, LatticeD};
use crate::bodies::{odometer, pow, BodySpec};
use crate::error::{Error, Result};
use crate::{ties_with, TIE_TOL};

fn max_exponent(spec: &BodySpec) -> f64 {
    spec.blocks().iter().map(|b| b.exponent).fold(1.0, f64::max)
}

pub const MAX_ORACLE_DIM: usize = 10;
pub const MAX_ORACLE_POINTS: u128 = 1_000_000_000;

/// Smallest box half-width (in unscaled coordinates) that contains every
/// vector of gauge at most `upper`: `|x_i| <= R·‖x‖`.
pub fn required_box(lat: &LatticeD, spec: &BodySpec, upper: f64) -> f64 {
    spec.radius() * upper / lat.scale()
}

fn guard(lat: &LatticeD, half_width: i64) -> Result<()> {
    if lat.n() > MAX_ORACLE_DIM {
        return Err(Error::ResourceLimit {
            what: "oracle dimension",
            reached: lat.n() as u128,
            limit: MAX_ORACLE_DIM as u128,
        });
    }
    if half_width < 1 {
        return Err(Error::InvalidParameter(format!(
            "oracle box {half_width} must be at least 1"
        )));
    }
    let side = 2 * half_width as u128 * lat.t() as u128 + 1;
    let points = side.checked_pow(lat.n() as u32).unwrap_or(u128::MAX);
    if points > MAX_ORACLE_POINTS {
        return Err(Error::ResourceLimit {
            what: "oracle points",
            reached: points,
            limit: MAX_ORACLE_POINTS,
        });
    }
    Ok(())
}

/// Whether `‖x‖ <= bound` may hold, from the block values alone.
///
/// `‖x‖ > γ` iff `G(x/γ) > 1`, and `‖x‖ <= γ(1+ε)` forces
/// `G(x/γ) <= (1+ε)^{p_max}`, so the test keeps every tie.
fn may_reach(spec: &BodySpec, values: &[f64], bound: f64, p_max: f64) -> bool {
    if !bound.is_finite() {
        return true;
    }
    let g: f64 = spec
        .blocks()
        .iter()
        .zip(values)
        .map(|(b, &f)| pow(f / bound, b.exponent))
        .sum();
    g <= (1.0 + 4.0 * TIE_TOL).powf(p_max)
}

/// Applies `visit(numerators, block values)` to every nonzero lattice vector
/// with numerators in `[−box·t, box·t]ⁿ`, one rayon task per first coordinate.
fn sweep<T, F>(lat: &LatticeD, spec: &BodySpec, half_width: i64, init: impl Fn() -> T + Sync, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut T, &[i64], &[f64]) + Sync,
{
    let n = lat.n();
    let hw = half_width * lat.t();
    let f = lat.scale() / lat.t() as f64;
    // In dimension one the single coordinate is the last one.
    let firsts = if n == 1 { -hw..=-hw } else { -hw..=hw };
    firsts
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut z = vec![-hw; n];
            z[0] = first;
            let mut x = vec![0.0; n];
            let mut values = vec![0.0; spec.blocks().len()];
            loop {
                // Only the residue class of the last coordinate can complete
                // the prefix to a lattice vector.
                if let Some((s, g)) = lat.basis().last_coordinate_class(&z[..n - 1]) {
                    let mut last = -hw + (s + hw).rem_euclid(g);
                    while last <= hw {
                        z[n - 1] = last;
                        if z.iter().any(|&v| v != 0) {
                            for (dst, &v) in x.iter_mut().zip(&z) {
                                *dst = v as f64 * f;
                            }
                            spec.block_values_into(&x, &mut values);
                            visit(&mut acc, &z, &values);
                        }
                        last += g;
                    }
                }
                if n <= 2 || !odometer(&mut z[1..n - 1], -hw, hw) {
                    break;
                }
            }
            acc
        })
        .collect()
}

/// Every nonzero lattice vector in the box with gauge at most `limit`
/// (within the tie tolerance), as `(numerators, gauge)` sorted by numerators.
pub fn brute_force_short_vectors(
    lat: &LatticeD,
    spec: &BodySpec,
    half_width: i64,
    limit: f64,
) -> Result<Vec<(Vec<i64>, f64)>> {
    check_inputs(lat, spec)?;
    guard(lat, half_width)?;
    let p_max = max_exponent(spec);
    let parts = sweep(
        lat,
        spec,
        half_width,
        Vec::new,
        |acc: &mut Vec<(Vec<i64>, f64)>, z, values| {
            if !may_reach(spec, values, limit, p_max) {
                return;
            }
            let g = spec.gauge_of_values(values);
            if g <= limit || ties_with(g, limit) {
                acc.push((z.to_vec(), g));
            }
        },
    );
    let mut out: Vec<(Vec<i64>, f64)> = parts.into_iter().flatten().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Minimal vectors within the box `[−half_width, half_width]ⁿ` (unscaled).
/// The report states whether the box provably contains all of them.
pub fn brute_force_kissing(lat: &LatticeD, spec: &BodySpec, half_width: i64) -> Result<KissingReport> {
    check_inputs(lat, spec)?;
    guard(lat, half_width)?;
    let started = Instant::now();
    let t = lat.t();
    let d = lat.d();

    #[derive(Default)]
    struct Local {
        best: Option<MinCount>,
        witnesses: Vec<Vec<i64>>,
    }
    let p_max = max_exponent(spec);
    let parts = sweep(lat, spec, half_width, Local::default, |acc: &mut Local, z, values| {
        let best = acc.best.get_or_insert(MinCount::EMPTY);
        if !may_reach(spec, values, best.value, p_max) {
            return;
        }
        let g = spec.gauge_of_values(values);
        let before = best.value;
        best.push(g, 1);
        if !ties_with(best.value, before) {
            acc.witnesses.clear();
        }
        if ties_with(g, best.value) {
            acc.witnesses.push(z.to_vec());
        }
    });

    let mut best = MinCount::EMPTY;
    for p in &parts {
        if let Some(b) = p.best {
            best = best.merge(b);
        }
    }
    let mut report = KissingReport::empty(lat, Method::BruteForce);
    if best.count == 0 {
        return Err(Error::Numerical("no nonzero lattice vector in the oracle box".into()));
    }
    let mut all: Vec<Vec<i64>> = parts
        .into_iter()
        .filter(|p| p.best.is_some_and(|b| ties_with(b.value, best.value)))
        .flat_map(|p| p.witnesses)
        .collect();
    all.sort();
    debug_assert_eq!(all.len() as u128, best.count);
    for w in &all {
        let s = fractional_support(w, t);
        if s > 0 && s < d {
            report.anomalies += 1;
            if report.anomaly_examples.len() < 10 {
                report
                    .anomaly_examples
                    .push(w.iter().map(|v| v.rem_euclid(t)).collect());
            }
        }
    }
    report.nu = best.value;
    report.count = best.count;
    all.truncate(MAX_WITNESSES);
    report.witnesses_truncated = (all.len() as u128) < best.count;
    report.witnesses = all;
    report.oracle_box = Some(half_width);
    report.box_sufficient = Some(half_width as f64 >= required_box(lat, spec, best.value) * (1.0 - 1e-12));
    report.finish(started);
    Ok(report)
}
