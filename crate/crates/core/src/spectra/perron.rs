use serde::Serialize;

use super::{full_spectrum, norm2};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Sup-norm change between successive normalized iterates that ends the
/// power iteration.
pub const CONVERGENCE_TOL: f64 = 1e-13;
pub const MAX_POWER_ITERATIONS: usize = 100_000;
/// Iteration budget for the vectors of reducible input, which need not
/// converge at all (tied components, Jordan blocks).
const BEST_EFFORT_ITERATIONS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronPair {
    /// Spectral radius.
    pub value: f64,
    /// Unit right Perron vector, entries nonnegative.
    pub right: Vec<f64>,
    /// Unit left Perron vector, entries nonnegative.
    pub left: Vec<f64>,
    /// When false the vectors are best-effort and may have zero entries.
    pub irreducible: bool,
    /// The power iteration hit its cap and `value` came from the full spectrum.
    pub used_fallback: bool,
}

struct PowerResult {
    vector: Vec<f64>,
    converged: bool,
}

/// Power iteration on `A + cI` (right) or `Aᵀ + cI` (left). Any `c > 0`
/// makes irreducible input primitive; see [`shift_for`].
fn power_iterate(a: &Matrix, shift: f64, transpose: bool, tol: f64, max_iter: usize) -> PowerResult {
    let n = a.dim();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut converged = false;
    for _ in 0..max_iter {
        let mut y = if transpose {
            a.matvec_transpose(&x)
        } else {
            a.matvec(&x)
        };
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let norm = norm2(&y);
        if norm == 0.0 {
            break;
        }
        let mut diff: f64 = 0.0;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi /= norm;
            diff = diff.max((*yi - xi).abs());
        }
        x = y;
        if diff < tol {
            converged = true;
            break;
        }
    }
    for xi in &mut x {
        *xi = xi.max(0.0);
    }
    let norm = norm2(&x);
    if norm > 0.0 {
        x.iter_mut().for_each(|xi| *xi /= norm);
    }
    PowerResult {
        vector: x,
        converged,
    }
}

/// Two-sided Rayleigh quotient `yᵀAx / yᵀx`, second order in the vector errors.
fn rayleigh(a: &Matrix, right: &[f64], left: &[f64]) -> Option<f64> {
    let denom: f64 = left.iter().zip(right).map(|(l, r)| l * r).sum();
    if denom <= f64::MIN_POSITIVE {
        return None;
    }
    let ax = a.matvec(right);
    let num: f64 = left.iter().zip(&ax).map(|(l, v)| l * v).sum();
    Some((num / denom).max(0.0))
}

/// Half the smaller of the largest row and column sums, both of which bound
/// `ρ(A)` from above. A shift on the scale of `ρ` keeps the eigenvalues of
/// periodic matrices well separated in modulus after shifting; a fixed shift
/// stalls convergence when the entries are small.
fn shift_for(a: &Matrix) -> f64 {
    let n = a.dim();
    let row = (0..n).map(|i| a.row(i).iter().sum::<f64>()).fold(0.0, f64::max);
    let col = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).sum::<f64>())
        .fold(0.0, f64::max);
    let c = 0.5 * row.min(col);
    if c > 0.0 {
        c
    } else {
        1.0
    }
}

fn irreducible_pair(a: &Matrix, tol: f64) -> Result<PerronPair> {
    let shift = shift_for(a);
    let right = power_iterate(a, shift, false, tol, MAX_POWER_ITERATIONS);
    let left = power_iterate(a, shift, true, tol, MAX_POWER_ITERATIONS);
    let estimate = rayleigh(a, &right.vector, &left.vector);
    let (value, used_fallback) = match estimate {
        Some(v) if right.converged && left.converged => (v, false),
        _ => (
            full_spectrum(a)
                .map_err(|_| Error::NoConvergence("perron_root"))?
                .spectral_radius(),
            true,
        ),
    };
    Ok(PerronPair {
        value,
        right: right.vector,
        left: left.vector,
        irreducible: true,
        used_fallback,
    })
}

/// Perron root and vectors of a nonnegative matrix.
///
/// Reducible input is accepted: the value is the largest Perron root over the
/// strongly connected components (a trivial component contributes its
/// diagonal entry), and the vectors come from the same shifted power
/// iteration on the whole matrix without any positivity guarantee.
pub fn perron_root(a: &Matrix) -> Result<PerronPair> {
    perron_root_with_tol(a, CONVERGENCE_TOL)
}

/// [`perron_root`] with an explicit stopping tolerance for the iterates.
pub fn perron_root_with_tol(a: &Matrix, tol: f64) -> Result<PerronPair> {
    perron(a, tol, true)
}

/// Perron root alone. Skips the best-effort vectors of reducible input.
pub(crate) fn perron_value(a: &Matrix, tol: f64) -> Result<f64> {
    Ok(perron(a, tol, false)?.value)
}

fn perron(a: &Matrix, tol: f64, reducible_vectors: bool) -> Result<PerronPair> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::param("tol", tol, "must be positive"));
    }
    a.ensure_nonnegative()?;
    let components = a.strong_components();
    if components.len() == 1 {
        return irreducible_pair(a, tol);
    }

    let mut value: f64 = 0.0;
    let mut used_fallback = false;
    for comp in &components {
        let v = if comp.len() == 1 {
            a.get(comp[0], comp[0])
        } else {
            let block = irreducible_pair(&a.principal_submatrix(comp)?, tol)?;
            used_fallback |= block.used_fallback;
            block.value
        };
        value = value.max(v);
    }
    let (right, left) = if reducible_vectors {
        let shift = shift_for(a);
        (
            power_iterate(a, shift, false, tol, BEST_EFFORT_ITERATIONS).vector,
            power_iterate(a, shift, true, tol, BEST_EFFORT_ITERATIONS).vector,
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(PerronPair {
        value,
        right,
        left,
        irreducible: false,
        used_fallback,
    })
}
