use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{decompose, is_irreducible, Matrix};
use crate::spectra::{null_space_residual, perron_root, symmetric_eigen};

/// Relative threshold below which the smallest singular value of the skew
/// part counts as zero.
pub const SKEW_SINGULAR_TOL: f64 = 1e-10;

fn require_irreducible(a: &Matrix) -> Result<()> {
    if is_irreducible(a)? {
        Ok(())
    } else {
        Err(Error::Reducible)
    }
}

/// `‖Kx‖ / (‖K‖_F‖x‖)` where `K = A − Aᵀ` and `x` is the Perron vector of
/// `A + Aᵀ`. Zero exactly when the Levinger function is constant.
pub fn constant_levinger_residual(a: &Matrix) -> Result<f64> {
    a.ensure_nonnegative()?;
    require_irreducible(a)?;
    let t = a.transpose();
    let sum = a.combine(1.0, &t, 1.0)?;
    let diff = a.combine(1.0, &t, -1.0)?;
    let x = perron_root(&sum)?.right;
    null_space_residual(&diff, &x)
}

/// Whether the Levinger function of an irreducible nonnegative matrix is
/// constant: the Perron vector of `A + Aᵀ` lies in the null space of `A − Aᵀ`.
pub fn is_constant_levinger(a: &Matrix, tol: f64) -> Result<bool> {
    Ok(constant_levinger_residual(a)? <= tol)
}

/// Size of the coupling between the Perron direction of `S` and the rest in
/// `K₁ = QᵀKQ`: the larger 2-norm of its first row and first column,
/// relative to `‖K‖_F`.
pub fn kqp_coupling(a: &Matrix) -> Result<f64> {
    a.ensure_nonnegative()?;
    let d = decompose(a);
    require_irreducible(&d.sym)?;
    let knorm = d.skew.frobenius_norm();
    if knorm == 0.0 {
        return Ok(0.0);
    }
    let q = symmetric_eigen(&d.sym)?.q;
    let k1 = q.transpose().matmul(&d.skew)?.matmul(&q)?;
    let n = a.dim();
    let row: f64 = (0..n).map(|j| k1.get(0, j).powi(2)).sum::<f64>().sqrt();
    let col: f64 = (0..n).map(|i| k1.get(i, 0).powi(2)).sum::<f64>().sqrt();
    Ok(row.max(col) / knorm)
}

/// Block test `QᵀKQ = 0 ⊕ K₂`, with `Q` diagonalizing `S` and its first
/// column the Perron vector of `S`.
pub fn kqp_structure_check(a: &Matrix, tol: f64) -> Result<bool> {
    Ok(kqp_coupling(a)? <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SkewSingularity {
    pub n_odd: bool,
    pub skew_rank_deficient: bool,
    pub smallest_singular_value: f64,
    pub skew_norm: f64,
}

/// Parity of `n` and whether the skew part `K` is singular.
///
/// The singular values of `K` are read off the symmetric matrix
/// `[[0, K], [Kᵀ, 0]]`, whose eigenvalues are `±σᵢ`. Unlike `KᵀK` this keeps
/// the absolute error at the `ε‖K‖` level rather than `√ε‖K‖`.
pub fn skew_singularity_check(a: &Matrix) -> SkewSingularity {
    let n = a.dim();
    let k = decompose(a).skew;
    let skew_norm = k.frobenius_norm();
    let smallest_singular_value = if skew_norm == 0.0 {
        0.0
    } else {
        let aug = Matrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, false) => k.get(i, j - n),
            (false, true) => k.get(j, i - n),
            _ => 0.0,
        })
        .expect("dimension 2n of a valid matrix");
        match symmetric_eigen(&aug) {
            Ok(f) => {
                let mut mags: Vec<f64> = f.lambda.iter().map(|v| v.abs()).collect();
                mags.sort_by(f64::total_cmp);
                // Each σ appears twice, as +σ and −σ.
                mags[0].max(mags[1])
            }
            Err(_) => f64::NAN,
        }
    };
    SkewSingularity {
        n_odd: n % 2 == 1,
        skew_rank_deficient: smallest_singular_value <= SKEW_SINGULAR_TOL * skew_norm,
        smallest_singular_value,
        skew_norm,
    }
}
