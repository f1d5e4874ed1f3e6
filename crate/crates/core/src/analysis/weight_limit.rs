use serde::Serialize;

use super::scan::{scan, LevingerScan};
use crate::error::{Error, Result};
use crate::families::cyclic_weighted_shift;

/// Scans with `t` below this count as the boundary region.
pub const BOUNDARY_WINDOW: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightLimitStep {
    /// `factor^k`, or 0 for the limit.
    pub scale: f64,
    pub weight: f64,
    pub scan: LevingerScan,
}

/// Shrinks one weight of a cyclic weighted shift geometrically and scans each
/// stage, ending with the weight set to exactly zero.
///
/// `index` is one-based. The result has `steps + 2` entries: scales
/// `factor^0, …, factor^steps`, then 0.
pub fn weight_limit_experiment(
    base: &[f64],
    index: usize,
    factor: f64,
    steps: usize,
    grid_size: usize,
    fd_step: f64,
) -> Result<Vec<WeightLimitStep>> {
    if index == 0 || index > base.len() {
        return Err(Error::param("index", index as f64, "out of range"));
    }
    if !(factor > 0.0 && factor < 1.0) {
        return Err(Error::param("factor", factor, "must lie in (0, 1)"));
    }
    if steps == 0 {
        return Err(Error::param("steps", 0.0, "must be at least 1"));
    }
    let scales = (0..=steps)
        .map(|k| factor.powi(k as i32))
        .chain(std::iter::once(0.0));
    scales
        .map(|scale| {
            let mut weights = base.to_vec();
            weights[index - 1] *= scale;
            let a = cyclic_weighted_shift(&weights)?;
            Ok(WeightLimitStep {
                scale,
                weight: weights[index - 1],
                scan: scan(&a, grid_size, fd_step)?,
            })
        })
        .collect()
}

/// Numbers that expose the nonuniform convergence of `r''` as the weight
/// vanishes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightLimitSummary {
    /// `max |d2r|` over `t < 0.05`, one per nonzero scale.
    pub boundary_max: Vec<f64>,
    /// `d2r` at the grid point nearest 1/2, one per nonzero scale.
    pub mid_d2r: Vec<f64>,
    /// `d2r` near 1/2 for the zero-weight limit.
    pub limit_mid_d2r: f64,
}

impl WeightLimitSummary {
    pub fn from_steps(steps: &[WeightLimitStep]) -> Option<Self> {
        let (limit, stages) = steps.split_last()?;
        let mid = |s: &LevingerScan| s.nearest(0.5).and_then(|k| s.d2r[k]).unwrap_or(f64::NAN);
        let boundary = |s: &LevingerScan| {
            s.t_grid
                .iter()
                .zip(&s.d2r)
                .filter(|(t, _)| **t < BOUNDARY_WINDOW)
                .filter_map(|(_, d)| d.map(f64::abs))
                .fold(0.0, f64::max)
        };
        Some(Self {
            boundary_max: stages.iter().map(|s| boundary(&s.scan)).collect(),
            mid_d2r: stages.iter().map(|s| mid(&s.scan)).collect(),
            limit_mid_d2r: mid(&limit.scan),
        })
    }

    /// `|d2r(1/2) − limit|` per stage.
    pub fn mid_gaps(&self) -> Vec<f64> {
        self.mid_d2r
            .iter()
            .map(|v| (v - self.limit_mid_d2r).abs())
            .collect()
    }

    /// Whether the midpoint gaps never grow by more than `noise`.
    pub fn mid_converges(&self, noise: f64) -> bool {
        let gaps = self.mid_gaps();
        gaps.iter().all(|g| g.is_finite()) && gaps.windows(2).all(|w| w[1] <= w[0] + noise)
    }

    /// `boundary_max` of the last stage over the first.
    pub fn boundary_growth(&self) -> f64 {
        match (self.boundary_max.first(), self.boundary_max.last()) {
            (Some(&first), Some(&last)) if first > 0.0 => last / first,
            _ => f64::NAN,
        }
    }
}
