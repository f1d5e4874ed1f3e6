// Index loops mirror the textbook algorithms.
#![allow(clippy::needless_range_loop)]

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// `S = q·diag(lambda)·qᵀ` with `lambda` descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalFactorization {
    pub q: Matrix,
    pub lambda: Vec<f64>,
}

impl OrthogonalFactorization {
    /// Column `k` of `q`.
    pub fn column(&self, k: usize) -> Vec<f64> {
        (0..self.q.dim()).map(|i| self.q.get(i, k)).collect()
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Sweeps until the off-diagonal Frobenius norm drops below
/// `1e-12·‖S‖_F`. Columns of `q` are signed so their entries sum to a
/// nonnegative value, which makes the Perron column positive.
pub fn symmetric_eigen(s: &Matrix) -> Result<OrthogonalFactorization> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.dim();
    let mut a = s.rows();
    let mut v = Matrix::identity(n)?.rows();
    let target = OFF_DIAGONAL_TOL * s.frobenius_norm();

    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += a[i][j] * a[i][j];
                }
            }
        }
        sum.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence("symmetric_eigen"));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                // A ← Jᵀ A J, touching rows and columns p, q.
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - sn * vkq;
                    row[q] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let lambda: Vec<f64> = order.iter().map(|&k| a[k][k]).collect();
    let signs: Vec<f64> = order
        .iter()
        .map(|&k| {
            let sum: f64 = v.iter().map(|row| row[k]).sum();
            if sum < 0.0 {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    let q = Matrix::from_fn(n, |i, j| signs[j] * v[i][order[j]])?;
    Ok(OrthogonalFactorization { q, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::decompose;
    use crate::spectra::perron_root;

    #[test]
    fn diagonal_input() {
        let f = symmetric_eigen(&Matrix::diagonal(&[3.0, 1.0]).unwrap()).unwrap();
        assert_eq!(f.lambda, vec![3.0, 1.0]);
        assert_eq!(f.q, Matrix::identity(2).unwrap());
        let f = symmetric_eigen(&Matrix::diagonal(&[1.0, 3.0]).unwrap()).unwrap();
        assert_eq!(f.lambda, vec![3.0, 1.0]);
        assert_eq!(f.column(0), vec![0.0, 1.0]);
    }

    #[test]
    fn swap_matrix() {
        let f = symmetric_eigen(&Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.lambda[0] - 1.0).abs() < 1e-15 && (f.lambda[1] + 1.0).abs() < 1e-15);
        let c0 = f.column(0);
        let c1 = f.column(1);
        assert!((c0[0] - h).abs() < 1e-15 && (c0[1] - h).abs() < 1e-15);
        // Second column is ±(1, -1)/√2.
        assert!((c1[0].abs() - h).abs() < 1e-15 && (c1[0] + c1[1]).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(symmetric_eigen(&a), Err(Error::NotSymmetric)));
    }

    #[test]
    fn agrees_with_power_iteration_on_toeplitz_symmetric_part() {
        let t = Matrix::from_rows(&[
            [5.0, 0.0, 6.0, 0.0],
            [1.0, 5.0, 0.0, 6.0],
            [0.0, 1.0, 5.0, 0.0],
            [8.0, 0.0, 1.0, 5.0],
        ])
        .unwrap();
        let s = decompose(&t).sym;
        let f = symmetric_eigen(&s).unwrap();
        let p = perron_root(&s).unwrap();
        assert!((f.lambda[0] - p.value).abs() < 1e-10);
        for (x, y) in f.column(0).iter().zip(&p.right) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
