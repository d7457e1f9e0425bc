//! Dense symmetric matrices small enough for block gauges (dimension <= 8 in practice).

use crate::error::{Error, Result};

/// Pivot threshold for the positive-definiteness test.
pub const PD_PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidGauge("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidGauge("matrix is not square".into()));
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGauge("matrix has non-finite entries".into()));
        }
        let m = Self { dim, data };
        for i in 0..dim {
            for j in 0..i {
                let (a, b) = (m.get(i, j), m.get(j, i));
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::InvalidGauge(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `xᵀ Q x`.
    #[inline]
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            let s: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            acc += x[i] * s;
        }
        acc
    }

    /// Lower-triangular Cholesky factor, or `None` if some pivot is at most
    /// `PD_PIVOT_TOL` relative to the diagonal scale.
    pub fn cholesky(&self) -> Option<Vec<f64>> {
        let n = self.dim;
        let scale = (0..n)
            .map(|i| self.get(i, i).abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = self.get(j, j);
            for k in 0..j {
                diag -= l[j * n + k] * l[j * n + k];
            }
            if diag <= PD_PIVOT_TOL * scale {
                return None;
            }
            let djj = diag.sqrt();
            l[j * n + j] = djj;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / djj;
            }
        }
        Some(l)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.cholesky().is_some()
    }

    /// Solves `Q x = b` for positive-definite `Q`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim;
        let l = self
            .cholesky()
            .ok_or_else(|| Error::InvalidGauge("matrix not positive definite".into()))?;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[i * n + k] * y[k]).sum();
            y[i] = (b[i] - s) / l[i * n + i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| l[k * n + i] * x[k]).sum();
            x[i] = (y[i] - s) / l[i * n + i];
        }
        Ok(x)
    }

    /// Diagonal of `Q⁻¹`.
    pub fn inverse_diagonal(&self) -> Result<Vec<f64>> {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![0.0; self.dim];
                e[i] = 1.0;
                Ok(self.solve(&e)?[i])
            })
            .collect()
    }

    /// Principal submatrix on `keep`.
    pub fn submatrix(&self, keep: &[usize]) -> SymMatrix {
        let dim = keep.len();
        let data = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        SymMatrix { dim, data }
    }
}
