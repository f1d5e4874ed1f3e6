use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{levinger_homotopy, Matrix};
use crate::spectra::spectral_radius;

/// Largest step `scan` accepts.
pub const MAX_SCAN_STEP: f64 = 1e-3;

/// Samples of `r(t) = ρ((1−t)A + tAᵀ)` on a grid, with central-difference
/// derivatives where the stencil stays inside `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevingerScan {
    pub t_grid: Vec<f64>,
    /// `NaN` where the eigensolver failed; see `failures`.
    pub r: Vec<f64>,
    pub dr: Vec<Option<f64>>,
    pub d2r: Vec<Option<f64>>,
    /// `None` when only values were sampled.
    pub fd_step: Option<f64>,
    pub failures: Vec<ScanFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanFailure {
    pub index: usize,
    pub t: f64,
    pub message: String,
}

impl LevingerScan {
    pub fn len(&self) -> usize {
        self.t_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_grid.is_empty()
    }

    /// `max r − min r` over the finite samples.
    pub fn range(&self) -> f64 {
        let finite = self.r.iter().copied().filter(|v| v.is_finite());
        let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if lo > hi {
            0.0
        } else {
            hi - lo
        }
    }

    /// Index of the grid point closest to `t`.
    pub fn nearest(&self, t: f64) -> Option<usize> {
        (0..self.len()).min_by(|&i, &j| {
            (self.t_grid[i] - t)
                .abs()
                .total_cmp(&(self.t_grid[j] - t).abs())
        })
    }
}

/// `k/(n−1)` for `k = 0..n`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

/// `r(t)` for a single `t ∈ [0, 1]`.
pub fn levinger_radius(a: &Matrix, t: f64) -> Result<f64> {
    spectral_radius(&levinger_homotopy(a, t)?)
}

/// Samples the Levinger function on a uniform grid of `grid_size` points.
///
/// A failed eigensolve at one point is recorded in `failures` and leaves
/// `NaN` behind; the scan carries on.
pub fn scan(a: &Matrix, grid_size: usize, fd_step: f64) -> Result<LevingerScan> {
    if grid_size < 3 {
        return Err(Error::param("grid_size", grid_size as f64, "must be at least 3"));
    }
    if !(fd_step > 0.0 && fd_step <= MAX_SCAN_STEP) {
        return Err(Error::param("fd_step", fd_step, "must lie in (0, 1e-3]"));
    }
    scan_grid(a, &uniform_grid(grid_size), Some(fd_step))
}

/// [`scan`] on an arbitrary sorted grid inside `[0, 1]`, with any positive
/// step. Without a step only `r` is sampled.
pub fn scan_grid(a: &Matrix, grid: &[f64], fd_step: Option<f64>) -> Result<LevingerScan> {
    if let Some(h) = fd_step {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::param("fd_step", h, "must be positive"));
        }
    }
    if let Some(&t) = grid.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::param("t", t, "grid must lie in [0, 1]"));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidSpec("grid is not sorted".into()));
    }

    let mut failures = Vec::new();
    let mut sample = |index: usize, t: f64| match levinger_radius(a, t) {
        Ok(v) => Some(v),
        Err(e) => {
            failures.push(ScanFailure {
                index,
                t,
                message: e.to_string(),
            });
            None
        }
    };

    let mut r = Vec::with_capacity(grid.len());
    let mut dr = Vec::with_capacity(grid.len());
    let mut d2r = Vec::with_capacity(grid.len());
    for (index, &t) in grid.iter().enumerate() {
        let mid = sample(index, t);
        r.push(mid.unwrap_or(f64::NAN));
        let h = match fd_step {
            Some(h) if t - h >= 0.0 && t + h <= 1.0 => h,
            _ => {
                dr.push(None);
                d2r.push(None);
                continue;
            }
        };
        let (lo, hi) = (sample(index, t - h), sample(index, t + h));
        match (lo, mid, hi) {
            (Some(lo), Some(mid), Some(hi)) => {
                dr.push(Some((hi - lo) / (2.0 * h)));
                d2r.push(Some((hi - 2.0 * mid + lo) / (h * h)));
            }
            _ => {
                dr.push(None);
                d2r.push(None);
            }
        }
    }
    Ok(LevingerScan {
        t_grid: grid.to_vec(),
        r,
        dr,
        d2r,
        fd_step,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ex1, weighted_shift};

    #[test]
    fn symmetric_input_is_flat() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 0.5], [2.0, 0.0, 3.0], [0.5, 3.0, 1.0]]).unwrap();
        let s = scan(&a, 101, 1e-4).unwrap();
        assert!(s.range() <= 1e-10);
        assert!(s.failures.is_empty());
    }

    #[test]
    fn ex1_matches_closed_spectrum() {
        let s = scan(&ex1(), 101, 1e-4).unwrap();
        for (t, r) in s.t_grid.iter().zip(&s.r) {
            let want = (t * (1.0 - t)).sqrt().max(0.4);
            assert!((r - want).abs() < 1e-9, "t={t}: {r} vs {want}");
        }
        assert!(s.dr[0].is_none() && s.d2r[100].is_none());
        assert!(s.dr[1].is_some());
    }

    #[test]
    fn weighted_shift_ratio() {
        let a = weighted_shift(&[1.0, 2.0, 3.0]).unwrap();
        let ratio = levinger_radius(&a, 0.3).unwrap() / levinger_radius(&a, 0.5).unwrap();
        assert!((ratio - 0.21f64.sqrt() / 0.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_arguments() {
        let a = ex1();
        assert!(scan(&a, 2, 1e-4).is_err());
        assert!(scan(&a, 11, 0.0).is_err());
        assert!(scan(&a, 11, 2e-3).is_err());
        assert!(scan_grid(&a, &[0.5, 0.2], None).is_err());
        assert!(scan_grid(&a, &[0.5, 1.2], Some(1e-4)).is_err());
        assert!(scan_grid(&a, &[0.5], Some(-1.0)).is_err());
        let values = scan_grid(&a, &[0.2, 0.5], None).unwrap();
        assert!(values.d2r.iter().all(Option::is_none));
    }

    #[test]
    fn grid_is_uniform_and_hits_one_half() {
        let g = uniform_grid(1001);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[500], 0.5);
        assert_eq!(g[1000], 1.0);
    }
}
