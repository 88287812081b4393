//! Dense LU factorization with partial pivoting, sized for frame change-of-basis
//! matrices (at most 4096 × 4096, in practice 16 × 16).

use crate::error::{Error, Result};

/// Row-major square matrix factored in place as `P A = L U`.
#[derive(Clone, Debug)]
pub struct LuFactors {
    dim: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factors a row-major `dim × dim` matrix. Pivots smaller than
    /// `pivot_tol · max|a_ij|` count as singular.
    pub fn new(dim: usize, matrix: &[f64], pivot_tol: f64) -> Result<Self> {
        assert_eq!(matrix.len(), dim * dim);
        let mut lu = matrix.to_vec();
        let mut perm: Vec<usize> = (0..dim).collect();
        let scale = lu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return Err(Error::Singular("zero matrix"));
        }
        for k in 0..dim {
            let (p, pivot) = (k..dim)
                .map(|r| (r, lu[r * dim + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= pivot_tol * scale {
                return Err(Error::Singular("matrix is singular to working precision"));
            }
            if p != k {
                for c in 0..dim {
                    lu.swap(k * dim + c, p * dim + c);
                }
                perm.swap(k, p);
            }
            let d = lu[k * dim + k];
            for r in k + 1..dim {
                let f = lu[r * dim + k] / d;
                if f == 0.0 {
                    continue;
                }
                lu[r * dim + k] = f;
                for c in k + 1..dim {
                    lu[r * dim + c] -= f * lu[k * dim + c];
                }
            }
        }
        Ok(Self { dim, lu, perm })
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim;
        assert_eq!(rhs.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for r in 0..n {
            let mut s = x[r];
            for c in 0..r {
                s -= self.lu[r * n + c] * x[c];
            }
            x[r] = s;
        }
        for r in (0..n).rev() {
            let mut s = x[r];
            for c in r + 1..n {
                s -= self.lu[r * n + c] * x[c];
            }
            x[r] = s / self.lu[r * n + r];
        }
        x
    }
}
