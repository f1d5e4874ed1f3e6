use serde::Serialize;

use super::derivative::first_derivative_of;
use super::scan::{levinger_radius, uniform_grid};
use crate::error::Result;
use crate::matrix::Matrix;

/// Default threshold on `|s₁ − s₂|` below which no certificate is issued.
pub const DEFAULT_SLOPE_TOL: f64 = 1e-5;
/// Points in the sign-change search.
pub const CROSSING_GRID: usize = 1001;
/// Bisection stops once `|r₁ − r₂|` is this small.
pub const CROSSING_GAP_TOL: f64 = 1e-12;
/// Step for the block slopes.
pub const SLOPE_STEP: f64 = 1e-5;

/// A point where the Levinger functions of two blocks cross at different
/// slopes. The Levinger function of their direct sum is the upper envelope
/// of the two curves and therefore has a convex kink there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingCertificate {
    pub t_star: f64,
    pub r_star: f64,
    pub s1: f64,
    pub s2: f64,
    pub delta: f64,
    /// `|r₁(t*) − r₂(t*)|` after bisection.
    pub gap: f64,
}

struct Blocks<'a> {
    a1: &'a Matrix,
    a2: &'a Matrix,
}

impl Blocks<'_> {
    fn gap(&self, t: f64) -> Result<f64> {
        Ok(levinger_radius(self.a1, t)? - levinger_radius(self.a2, t)?)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut g_lo: f64) -> Result<f64> {
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let g = self.gap(mid)?;
            if g.abs() <= CROSSING_GAP_TOL || mid <= lo || mid >= hi {
                break;
            }
            if (g < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
            }
        }
        Ok(mid)
    }

    fn certificate(&self, t: f64) -> Result<CrossingCertificate> {
        let r1 = levinger_radius(self.a1, t)?;
        let r2 = levinger_radius(self.a2, t)?;
        let s1 = first_derivative_of(|s| levinger_radius(self.a1, s), t, SLOPE_STEP)?.value;
        let s2 = first_derivative_of(|s| levinger_radius(self.a2, s), t, SLOPE_STEP)?.value;
        Ok(CrossingCertificate {
            t_star: t,
            r_star: r1.max(r2),
            s1,
            s2,
            delta: (s1 - s2).abs(),
            gap: (r1 - r2).abs(),
        })
    }
}

/// Every crossing of the two Levinger functions strictly inside `(0, 1)`,
/// whatever its slope gap. Tangencies without a sign change are missed.
pub fn directsum_crossings(a1: &Matrix, a2: &Matrix) -> Vec<CrossingCertificate> {
    let blocks = Blocks { a1, a2 };
    let grid = uniform_grid(CROSSING_GRID);
    let g: Vec<Option<f64>> = grid.iter().map(|&t| blocks.gap(t).ok()).collect();
    let mut roots = Vec::new();
    for k in 0..grid.len() - 1 {
        match (g[k], g[k + 1]) {
            (Some(0.0), _) => roots.push(grid[k]),
            (Some(lo), Some(hi)) if hi != 0.0 && (lo < 0.0) != (hi < 0.0) => {
                if let Ok(t) = blocks.bisect(grid[k], grid[k + 1], lo) {
                    roots.push(t);
                }
            }
            _ => {}
        }
    }
    roots
        .into_iter()
        .filter(|t| *t > 0.0 && *t < 1.0)
        .filter_map(|t| blocks.certificate(t).ok())
        .collect()
}

/// First crossing in `(0, 1)` whose slope gap `|s₁ − s₂|` exceeds `tol`.
///
/// Such a crossing proves that the Levinger function of `A₁ ⊕ A₂` is not
/// concave. Blocks need only be nonnegative; reducible blocks are accepted
/// because the Perron root handles them exactly.
pub fn directsum_crossing(a1: &Matrix, a2: &Matrix, tol: f64) -> Option<CrossingCertificate> {
    directsum_crossings(a1, a2)
        .into_iter()
        .find(|c| c.delta > tol && c.gap <= 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::four_by_four_blocks;

    #[test]
    fn ex1_blocks_cross_at_one_fifth() {
        let a1 = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let a2 = Matrix::from_rows(&[[0.4]]).unwrap();
        let c = directsum_crossing(&a1, &a2, DEFAULT_SLOPE_TOL).unwrap();
        assert!((c.t_star - 0.2).abs() < 1e-9, "{c:?}");
        assert!((c.r_star - 0.4).abs() < 1e-9);
        assert!((c.s1 - 0.75).abs() < 1e-6);
        assert!(c.s2.abs() < 1e-9);
        let all = directsum_crossings(&a1, &a2);
        assert_eq!(all.len(), 2);
        assert!((all[1].t_star - 0.8).abs() < 1e-9);
    }

    #[test]
    fn identical_blocks_never_cross() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.5, 1.0]]).unwrap();
        assert!(directsum_crossing(&a, &a, DEFAULT_SLOPE_TOL).is_none());
    }

    #[test]
    fn four_by_four_at_h_point_four() {
        let (a1, a2) = four_by_four_blocks(0.4).unwrap();
        let c = directsum_crossing(&a1, &a2, DEFAULT_SLOPE_TOL).unwrap();
        assert!(c.delta > 1e-3, "{c:?}");
    }
}
