//! Triangular basis of an integer lattice `L` with `tZⁿ ⊆ L ⊆ Zⁿ`.
//!
//! Built by column-wise extended-gcd elimination over the generators together
//! with `t·e_j`; entries right of each pivot are kept reduced mod `t`, which is
//! allowed because `t·e_j ∈ L`.

#[derive(Debug, Clone, PartialEq)]
pub struct ModularBasis {
    t: i64,
    /// `order[j]` is the original coordinate processed at position `j`.
    order: Vec<usize>,
    /// Row `j` is zero before position `j`, has `diag[j]` at `j`, and lies in `[0, t)` after.
    rows: Vec<Vec<i64>>,
    diag: Vec<i64>,
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `x·a + y·b = g`.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl ModularBasis {
    /// Basis of `tZⁿ + span_Z(generators)`, eliminating coordinates in `order`.
    pub fn new(generators: &[Vec<i64>], t: i64, order: &[usize]) -> Self {
        let n = order.len();
        let mut pending: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| order.iter().map(|&c| g[c].rem_euclid(t)).collect::<Vec<i64>>())
            .filter(|g| g.iter().any(|&v| v != 0))
            .collect();
        let mut rows = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        for col in 0..n {
            let mut pivot = vec![0i64; n];
            pivot[col] = t;
            for row in pending.iter_mut() {
                let beta = row[col];
                if beta == 0 {
                    continue;
                }
                let alpha = pivot[col];
                let (g, x, y) = egcd(alpha, beta);
                let (pa, rb) = (beta / g, alpha / g);
                // Unimodular: det [[x, y], [β/g, −α/g]] = −1.
                for k in col + 1..n {
                    let (p, r) = (pivot[k], row[k]);
                    pivot[k] = (x * p + y * r).rem_euclid(t);
                    row[k] = (pa * p - rb * r).rem_euclid(t);
                }
                pivot[col] = g;
                row[col] = 0;
            }
            pending.retain(|r| r.iter().any(|&v| v != 0));
            diag.push(pivot[col]);
            rows.push(pivot);
        }
        Self {
            t,
            order: order.to_vec(),
            rows,
            diag,
        }
    }

    pub fn natural(generators: &[Vec<i64>], t: i64, n: usize) -> Self {
        let order: Vec<usize> = (0..n).collect();
        Self::new(generators, t, &order)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Pivot entries; their product is the index `[Zⁿ : L]`.
    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    /// Rows in processing order (coordinates permuted by `order`).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `|L / tZⁿ| = Π (t / g_j)`, saturating.
    pub fn quotient_size(&self) -> u128 {
        self.diag
            .iter()
            .try_fold(1u128, |acc, &g| acc.checked_mul((self.t / g) as u128))
            .unwrap_or(u128::MAX)
    }

    /// Membership of an integer vector given in original coordinates.
    pub fn contains(&self, v: &[i64]) -> bool {
        let n = self.n();
        // Codes have length at most 64.
        let mut u = [0i64; 64];
        for (dst, &c) in u.iter_mut().zip(&self.order) {
            *dst = v[c];
        }
        for j in 0..n {
            let r = u[j].rem_euclid(self.t);
            if r % self.diag[j] != 0 {
                return false;
            }
            let m = r / self.diag[j];
            if m != 0 {
                let row = &self.rows[j];
                for k in j + 1..n {
                    u[k] -= m * row[k];
                }
            }
        }
        true
    }

    /// For the natural coordinate order: given the first `n − 1` entries, the
    /// class `(s, g)` such that the vector is in `L` iff its last entry is
    /// `≡ s (mod g)`, or `None` when no last entry works.
    pub(crate) fn last_coordinate_class(&self, prefix: &[i64]) -> Option<(i64, i64)> {
        let n = self.n();
        debug_assert!(self.order.iter().enumerate().all(|(i, &c)| i == c));
        debug_assert_eq!(prefix.len() + 1, n);
        let mut u = [0i64; 64];
        u[..n - 1].copy_from_slice(prefix);
        for j in 0..n - 1 {
            let r = u[j].rem_euclid(self.t);
            if r % self.diag[j] != 0 {
                return None;
            }
            let m = r / self.diag[j];
            if m != 0 {
                let row = &self.rows[j];
                for k in j + 1..n {
                    u[k] -= m * row[k];
                }
            }
        }
        let g = self.diag[n - 1];
        Some(((-u[n - 1]).rem_euclid(g), g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egcd_identity() {
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let (g, x, y) = egcd(a, b);
                assert_eq!(x * a + y * b, g);
                assert!(g >= 0);
                if a != 0 || b != 0 {
                    assert_eq!(a % g, 0);
                    assert_eq!(b % g, 0);
                }
            }
        }
    }

    #[test]
    fn single_generator() {
        let b = ModularBasis::natural(&[vec![1, 1, 1, 1]], 4, 4);
        assert_eq!(b.diag(), &[1, 4, 4, 4]);
        assert_eq!(b.quotient_size(), 4);
        assert!(b.contains(&[3, 3, 3, 3]));
        assert!(b.contains(&[-1, 3, 7, -5]));
        assert!(!b.contains(&[1, 1, 1, 0]));
        assert!(b.contains(&[4, 0, -8, 0]));
    }

    #[test]
    fn membership_matches_explicit_span() {
        // Span of two generators mod 3 in (Z/3)^3, listed by hand.
        let gens = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let b = ModularBasis::natural(&gens, 3, 3);
        let mut members = Vec::new();
        for a in 0..3 {
            for c in 0..3 {
                members.push([a % 3, (a + c) % 3, c % 3]);
            }
        }
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let v = [x, y, z];
                    assert_eq!(b.contains(&v), members.contains(&v), "{v:?}");
                }
            }
        }
        assert_eq!(b.quotient_size(), 9);
    }

    #[test]
    fn permuted_order_same_lattice() {
        let gens = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![2, 1, 0, 3]];
        let a = ModularBasis::natural(&gens, 4, 4);
        let b = ModularBasis::new(&gens, 4, &[3, 1, 0, 2]);
        assert_eq!(a.quotient_size(), b.quotient_size());
        let mut v = [0i64; 4];
        loop {
            assert_eq!(a.contains(&v), b.contains(&v), "{v:?}");
            if !crate::bodies::odometer(&mut v, 0, 3) {
                break;
            }
        }
    }

    #[test]
    fn last_coordinate_class_matches_membership() {
        let gens = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![2, 1, 0, 3]];
        let b = ModularBasis::natural(&gens, 4, 4);
        let mut v = [0i64; 4];
        loop {
            let class = b.last_coordinate_class(&v[..3]);
            let expect = class.is_some_and(|(s, g)| (v[3] - s).rem_euclid(g) == 0);
            assert_eq!(b.contains(&v), expect, "{v:?}");
            if !crate::bodies::odometer(&mut v, -5, 5) {
                break;
            }
        }
    }
}
