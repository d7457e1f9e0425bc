//! The finite group `Λ/Zⁿ` and per-coset minimization of the gauge.

use std::collections::{HashMap, VecDeque};

use super::LatticeD;
use crate::bodies::{pow, BodySpec, MAX_BLOCK_ARITY};
use crate::error::{Error, Result};
use crate::ties_with;

/// Closure guard for the coset subgroup.
pub const MAX_COSETS: u128 = 1 << 24;

/// Representatives `{0,…,t−1}ⁿ` of `Λ/Zⁿ`, in breadth-first insertion order.
#[derive(Debug, Clone)]
pub struct CosetSubgroup {
    t: i64,
    n: usize,
    reps: Vec<u8>,
    index: HashMap<Box<[u8]>, usize>,
}

impl CosetSubgroup {
    /// Breadth-first closure of `C_d mod t` under addition mod `t`.
    ///
    /// The size is projected from the lattice basis first; a projected size
    /// above `limit` is rejected before any work is done.
    pub fn closure(lat: &LatticeD, limit: u128) -> Result<Self> {
        let projected = lat.basis().quotient_size();
        if projected > limit {
            return Err(Error::ResourceLimit {
                what: "coset subgroup",
                reached: projected,
                limit,
            });
        }
        let (t, n) = (lat.t(), lat.n());
        let mut gens: Vec<Vec<u8>> = lat
            .generators()
            .iter()
            .map(|g| g.iter().map(|&v| v.rem_euclid(t) as u8).collect())
            .collect();
        gens.sort();
        gens.dedup();

        let zero: Box<[u8]> = vec![0u8; n].into_boxed_slice();
        let mut reps = Vec::with_capacity(projected as usize * n);
        let mut index = HashMap::with_capacity(projected as usize);
        reps.extend_from_slice(&zero);
        index.insert(zero, 0usize);
        let mut queue = VecDeque::from([0usize]);
        let mut next = vec![0u8; n];
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let cur = &reps[i * n..(i + 1) * n];
                for ((dst, &a), &b) in next.iter_mut().zip(cur).zip(g) {
                    *dst = ((a as i64 + b as i64) % t) as u8;
                }
                if index.contains_key(next.as_slice()) {
                    continue;
                }
                let id = index.len();
                if id as u128 >= limit {
                    return Err(Error::ResourceLimit {
                        what: "coset subgroup",
                        reached: id as u128 + 1,
                        limit,
                    });
                }
                reps.extend_from_slice(&next);
                index.insert(next.clone().into_boxed_slice(), id);
                queue.push_back(id);
            }
        }
        Ok(Self { t, n, reps, index })
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.reps[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.reps.chunks_exact(self.n)
    }

    pub fn contains(&self, rep: &[u8]) -> bool {
        self.index.contains_key(rep)
    }
}

/// Per-block data for coset minimization.
pub(crate) struct BlockPlan {
    coords: Vec<usize>,
    exponent: f64,
    radius: f64,
    /// `f(e_0)` for singleton blocks, where `f(x) = f(e_0)·|x|`.
    unit: Option<f64>,
    /// Integer minimum `ρ_j` with its minimizers.
    rho: f64,
    rho_witnesses: Vec<Vec<i64>>,
}

/// Precomputed view of a body for minimizing over cosets of `Zⁿ`.
pub(crate) struct CosetMinimizer<'a> {
    spec: &'a BodySpec,
    blocks: Vec<BlockPlan>,
    t: i64,
    scale: f64,
}

/// Minimum of one block over `rep/t + Z^k`.
#[derive(Debug, Clone)]
pub(crate) struct BlockMin {
    pub f: f64,
    pub count: u128,
}

impl<'a> CosetMinimizer<'a> {
    pub fn new(spec: &'a BodySpec, t: i64, scale: f64) -> Result<Self> {
        let mut blocks = Vec::with_capacity(spec.blocks().len());
        for b in spec.blocks() {
            if b.coords.len() > MAX_BLOCK_ARITY {
                return Err(Error::ResourceLimit {
                    what: "block arity",
                    reached: b.coords.len() as u128,
                    limit: MAX_BLOCK_ARITY as u128,
                });
            }
            let im = b.gauge.min_integer_gauge()?;
            blocks.push(BlockPlan {
                coords: b.coords.clone(),
                exponent: b.exponent,
                radius: b.gauge.radius(),
                unit: (b.coords.len() == 1).then(|| b.gauge.axis_value(0)),
                rho: im.rho,
                rho_witnesses: im.witnesses,
            });
        }
        Ok(Self { spec, blocks, t, scale })
    }

    /// Minimal gauge over nonzero integer vectors, its multiplicity, and the
    /// minimal functional value `G` over nonzero integer vectors.
    ///
    /// A nonzero integer vector supported on several blocks has a strictly
    /// larger gauge than its restriction to any one of them.
    pub fn zero_coset(&self) -> (f64, u128, f64) {
        let best = self
            .blocks
            .iter()
            .map(|b| self.scale * b.rho)
            .fold(f64::INFINITY, f64::min);
        let count = self
            .blocks
            .iter()
            .filter(|b| ties_with(self.scale * b.rho, best))
            .map(|b| b.rho_witnesses.len() as u128)
            .sum();
        let g_min = self
            .blocks
            .iter()
            .map(|b| pow(self.scale * b.rho, b.exponent))
            .fold(f64::INFINITY, f64::min);
        (best, count, g_min)
    }

    pub fn zero_coset_witnesses(&self, n: usize, out: &mut Vec<Vec<i64>>, cap: usize) {
        let (best, _, _) = self.zero_coset();
        for b in self.blocks.iter().filter(|b| ties_with(self.scale * b.rho, best)) {
            for z in &b.rho_witnesses {
                if out.len() >= cap {
                    return;
                }
                let mut v = vec![0i64; n];
                for (&c, &zi) in b.coords.iter().zip(z) {
                    v[c] = zi * self.t;
                }
                out.push(v);
            }
        }
    }

    /// Integer shift range for coordinate fraction `fr` with `|scale·(fr + z)| <= bound`.
    fn shift_range(&self, fr: f64, bound: f64) -> (i64, i64) {
        let b = bound / self.scale;
        ((-b - fr).ceil() as i64, (b - fr).floor() as i64)
    }

    /// Minimizes block `j` over `rep/t + Z^k`; when `shifts` is given, every
    /// minimizing shift is appended to it.
    pub fn block_min(&self, j: usize, rep: &[u8], mut shifts: Option<&mut Vec<Vec<i64>>>) -> BlockMin {
        let plan = &self.blocks[j];
        let gauge = &self.spec.blocks()[j].gauge;
        let t = self.t;
        let k = plan.coords.len();
        if plan.coords.iter().all(|&c| rep[c] == 0) {
            if let Some(s) = shifts.as_deref_mut() {
                s.push(vec![0; k]);
            }
            return BlockMin { f: 0.0, count: 1 };
        }
        if let Some(unit) = plan.unit {
            // f = unit·|x|: nearest residue, two choices exactly at 1/2.
            let r = rep[plan.coords[0]] as i64;
            let near = r.min(t - r);
            let f = unit * self.scale * near as f64 / t as f64;
            let tie = 2 * r == t;
            if let Some(s) = shifts {
                if r <= t - r {
                    s.push(vec![0]);
                }
                if r >= t - r {
                    s.push(vec![-1]);
                }
            }
            return BlockMin {
                f,
                count: if tie { 2 } else { 1 },
            };
        }

        let fr: Vec<f64> = plan.coords.iter().map(|&c| rep[c] as f64 / t as f64).collect();
        let mut x = vec![0.0; k];
        for i in 0..k {
            let y = if fr[i] <= 0.5 { fr[i] } else { fr[i] - 1.0 };
            x[i] = self.scale * y;
        }
        let upper = gauge.eval(&x);
        let bound = plan.radius * upper * (1.0 + 1e-9) + 1e-12;
        let ranges: Vec<(i64, i64)> = fr.iter().map(|&f| self.shift_range(f, bound)).collect();
        let mut z: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        let mut best = f64::INFINITY;
        let mut count = 0u128;
        let mut found: Vec<(f64, Vec<i64>)> = Vec::new();
        loop {
            for i in 0..k {
                x[i] = self.scale * (fr[i] + z[i] as f64);
            }
            let v = gauge.eval(&x);
            if ties_with(v, best) {
                count += 1;
                best = best.min(v);
                if shifts.is_some() {
                    found.push((v, z.clone()));
                }
            } else if v < best {
                best = v;
                count = 1;
                if shifts.is_some() {
                    found.retain(|(fv, _)| ties_with(*fv, v));
                    found.push((v, z.clone()));
                }
            }
            // odometer over the per-coordinate ranges
            let mut i = k;
            loop {
                if i == 0 {
                    if let Some(s) = shifts {
                        s.extend(found.into_iter().filter(|(fv, _)| ties_with(*fv, best)).map(|(_, z)| z));
                    }
                    return BlockMin { f: best, count };
                }
                i -= 1;
                if z[i] < ranges[i].1 {
                    z[i] += 1;
                    break;
                }
                z[i] = ranges[i].0;
            }
        }
    }

    /// Minimal gauge, functional value and multiplicity over a nonzero coset.
    pub fn coset_min(&self, rep: &[u8]) -> (f64, f64, u128) {
        let mut values = [0.0f64; 64];
        let nb = self.blocks.len();
        let mut heap_values;
        let values: &mut [f64] = if nb <= 64 {
            &mut values[..nb]
        } else {
            heap_values = vec![0.0; nb];
            &mut heap_values
        };
        let mut count = 1u128;
        for (j, slot) in values.iter_mut().enumerate() {
            let m = self.block_min(j, rep, None);
            *slot = m.f;
            count = count.saturating_mul(m.count);
        }
        let gauge = self.spec.gauge_of_values(values);
        let g = self.spec.functional_of_values(values);
        (gauge, g, count)
    }

    /// Appends the minimal vectors of a nonzero coset (numerators over `t`).
    pub fn coset_witnesses(&self, rep: &[u8], out: &mut Vec<Vec<i64>>, cap: usize) {
        let n = rep.len();
        let per_block: Vec<Vec<Vec<i64>>> = (0..self.blocks.len())
            .map(|j| {
                let mut s = Vec::new();
                self.block_min(j, rep, Some(&mut s));
                s
            })
            .collect();
        let mut pick = vec![0usize; per_block.len()];
        loop {
            if out.len() >= cap {
                return;
            }
            let mut v: Vec<i64> = rep.iter().map(|&r| r as i64).collect();
            for (j, plan) in self.blocks.iter().enumerate() {
                for (&c, &z) in plan.coords.iter().zip(&per_block[j][pick[j]]) {
                    v[c] += z * self.t;
                }
            }
            debug_assert_eq!(v.len(), n);
            out.push(v);
            let mut j = per_block.len();
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                pick[j] += 1;
                if pick[j] < per_block[j].len() {
                    break;
                }
                pick[j] = 0;
            }
        }
    }
}

/// Shortest vectors in the coset `rep/t + Zⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetShortest {
    pub value: f64,
    pub count: u128,
    /// Numerators over `t`, sorted.
    pub witnesses: Vec<Vec<i64>>,
}

/// Exact minimum of the gauge over `scale·(rep/t + Zⁿ)` and its multiplicity.
/// The zero coset yields the shortest nonzero integer vectors.
///
/// The gauge is strictly increasing in each block value `f_j`, and the shifts
/// of different blocks are independent, so the minimum is assembled from
/// per-block minima and the minimizer set is their product.
pub fn shortest_in_coset(rep: &[i64], spec: &BodySpec, t: i64, scale: f64) -> Result<CosetShortest> {
    if rep.len() != spec.n() {
        return Err(Error::Format(format!(
            "coset of length {} for a body in R^{}",
            rep.len(),
            spec.n()
        )));
    }
    let rep: Vec<u8> = rep.iter().map(|&v| v.rem_euclid(t) as u8).collect();
    let m = CosetMinimizer::new(spec, t, scale)?;
    let mut witnesses = Vec::new();
    let (value, count) = if rep.iter().all(|&v| v == 0) {
        let (v, c, _) = m.zero_coset();
        m.zero_coset_witnesses(rep.len(), &mut witnesses, usize::MAX);
        (v, c)
    } else {
        let (v, _, c) = m.coset_min(&rep);
        m.coset_witnesses(&rep, &mut witnesses, usize::MAX);
        (v, c)
    };
    witnesses.sort();
    Ok(CosetShortest {
        value,
        count,
        witnesses,
    })
}
