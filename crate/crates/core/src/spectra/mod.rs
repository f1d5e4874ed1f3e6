//! Eigenvalue solvers.
//!
//! * [`perron_root`]: Perron root with right and left Perron vectors by
//!   shifted power iteration.
//! * [`full_spectrum`]: every eigenvalue through Householder reduction to
//!   upper Hessenberg form followed by Francis double-shift QR.
//! * [`symmetric_eigen`]: cyclic Jacobi rotations for symmetric input.

mod hessenberg;
mod jacobi;
mod perron;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use hessenberg::full_spectrum;
pub use jacobi::{symmetric_eigen, OrthogonalFactorization};
pub use perron::{
    perron_root, perron_root_with_tol, PerronPair, CONVERGENCE_TOL, MAX_POWER_ITERATIONS,
};

/// All eigenvalues of a matrix, sorted by descending modulus, then by
/// descending real part, then by descending imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

/// Moduli closer than this (relative to the spectral radius) count as tied.
const MODULUS_TIE_TOL: f64 = 1e-12;

fn by_parts(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(by_parts(a, b)));
        // Rounding splits equal moduli (roots of unity, ±λ pairs), so
        // runs of near-equal modulus are re-sorted by parts.
        let scale = values.first().map_or(0.0, |z| z.norm()).max(f64::MIN_POSITIVE);
        let mut start = 0;
        while start < values.len() {
            let head = values[start].norm();
            let mut end = start + 1;
            while end < values.len() && head - values[end].norm() <= MODULUS_TIE_TOL * scale {
                end += 1;
            }
            values[start..end].sort_by(by_parts);
            start = end;
        }
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Modulus of the leading eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.values.first().map_or(0.0, |z| z.norm())
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// Greedy multiset distance: the largest gap after pairing each value
    /// with its nearest unused counterpart. `f64::INFINITY` on length mismatch.
    pub fn max_distance(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let mut used = vec![false; other.len()];
        let mut worst: f64 = 0.0;
        for z in &self.values {
            let (k, d) = other
                .values
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, w)| (k, (z - w).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("lengths match");
            used[k] = true;
            worst = worst.max(d);
        }
        worst
    }
}

/// Spectral radius. Nonnegative input goes through [`perron_root`],
/// anything else through [`full_spectrum`].
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    spectral_radius_with_tol(a, CONVERGENCE_TOL)
}

/// [`spectral_radius`] with an explicit power-iteration tolerance.
pub fn spectral_radius_with_tol(a: &Matrix, tol: f64) -> Result<f64> {
    if a.is_nonnegative() {
        perron::perron_value(a, tol)
    } else {
        Ok(full_spectrum(a)?.spectral_radius())
    }
}

/// Whether `‖Kx‖ ≤ tol·‖K‖_F·‖x‖`.
pub fn null_space_contains(k: &Matrix, x: &[f64], tol: f64) -> Result<bool> {
    Ok(null_space_residual(k, x)? <= tol)
}

/// `‖Kx‖ / (‖K‖_F·‖x‖)`, or 0 when `K = 0`.
pub fn null_space_residual(k: &Matrix, x: &[f64]) -> Result<f64> {
    if x.len() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: x.len(),
        });
    }
    let xnorm = norm2(x);
    if xnorm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let knorm = k.frobenius_norm();
    if knorm == 0.0 {
        return Ok(0.0);
    }
    Ok(norm2(&k.matvec(x)) / (knorm * xnorm))
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::decompose;

    #[test]
    fn ordering_is_modulus_then_real_then_imaginary() {
        let s = Spectrum::new(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]);
        let want = [(1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (0.5, 0.0)];
        for (z, (re, im)) in s.values().iter().zip(want) {
            assert_eq!((z.re, z.im), (re, im));
        }
        assert_eq!(s.spectral_radius(), 1.0);
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius(&Matrix::zeros(4).unwrap()).unwrap(), 0.0);
        let ex1 = |t: f64| {
            Matrix::from_rows(&[[0.0, 1.0 - t, 0.0], [t, 0.0, 0.0], [0.0, 0.0, 0.4]]).unwrap()
        };
        assert!((spectral_radius(&ex1(0.09)).unwrap() - 0.4).abs() < 1e-12);
        assert!((spectral_radius(&ex1(0.5)).unwrap() - 0.5).abs() < 1e-12);
        let signed = Matrix::from_rows(&[[0.0, -2.0], [2.0, 0.0]]).unwrap();
        assert!((spectral_radius(&signed).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_examples() {
        let z = Matrix::zeros(3).unwrap();
        assert!(null_space_contains(&z, &[1.0, 2.0, 3.0], 1e-12).unwrap());
        assert!(matches!(
            null_space_contains(&z, &[0.0; 3], 1e-12),
            Err(Error::ZeroVector)
        ));

        let s = Matrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        let x = perron_root(&s).unwrap().right;
        assert!(null_space_contains(&decompose(&s).skew, &x, 1e-12).unwrap());

        let t = Matrix::from_rows(&[
            [5.0, 0.0, 6.0, 0.0],
            [1.0, 5.0, 0.0, 6.0],
            [0.0, 1.0, 5.0, 0.0],
            [8.0, 0.0, 1.0, 5.0],
        ])
        .unwrap();
        let d = decompose(&t);
        let x = perron_root(&d.sym).unwrap().right;
        let res = null_space_residual(&d.skew, &x).unwrap();
        assert!(res > 1e-3, "residual {res}");
        assert!(!null_space_contains(&d.skew, &x, 1e-8).unwrap());
    }

    #[test]
    fn max_distance_pairs_multisets() {
        let a = Spectrum::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let b = Spectrum::new(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(a.max_distance(&b), 2.0);
        assert_eq!(a.max_distance(&a), 0.0);
    }
}
