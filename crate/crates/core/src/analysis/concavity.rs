use serde::Serialize;

use super::scan::{levinger_radius, LevingerScan};
use crate::error::Result;
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Constant,
    ConcaveOnGrid,
    Nonconcave,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Constant => "constant",
            Verdict::ConcaveOnGrid => "concave-on-grid",
            Verdict::Nonconcave => "nonconcave",
        }
    }
}

/// Three-point violation of concavity: `r((t₁+t₂)/2)` below the chord average.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub t1: f64,
    pub t2: f64,
    /// Margin from the scan samples.
    pub margin: f64,
    /// Margin from three fresh eigensolves.
    pub verified_margin: f64,
}

impl Witness {
    pub fn t_mid(&self) -> f64 {
        0.5 * (self.t1 + self.t2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcavityReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// `max r − min r` over the scan.
    pub range: f64,
    /// Largest grid margin found, whether or not it exceeds the tolerance.
    pub max_margin: f64,
}

/// `(r(t₁) + r(t₂))/2 − r((t₁+t₂)/2)` from three fresh evaluations.
pub fn chord_margin(a: &Matrix, t1: f64, t2: f64) -> Result<f64> {
    chord_margin_with(|t| levinger_radius(a, t), t1, t2)
}

pub fn chord_margin_with<F>(f: F, t1: f64, t2: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Ok(0.5 * (f(t1)? + f(t2)?) - f(0.5 * (t1 + t2))?)
}

/// Grid pair `(i, j)` with `i + j` even and the largest chord margin.
fn best_grid_pair(r: &[f64]) -> Option<(usize, usize, f64)> {
    let n = r.len();
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        if !r[i].is_finite() {
            continue;
        }
        for j in (i + 2..n).step_by(2) {
            let mid = r[(i + j) / 2];
            if !(r[j].is_finite() && mid.is_finite()) {
                continue;
            }
            let margin = 0.5 * (r[i] + r[j]) - mid;
            if best.is_none_or(|(_, _, m)| margin > m) {
                best = Some((i, j, margin));
            }
        }
    }
    best
}

/// Looks for a violation of concavity among the scan samples.
///
/// Every pair of grid points whose midpoint is also a grid point is tried.
/// The pair with the largest margin is re-evaluated from scratch, and the
/// verdict is nonconcave only if both margins exceed `tol`. Otherwise the
/// verdict is constant when the sampled range is at most `tol`, and
/// concave-on-grid when it is not. The scan must come from a uniform grid.
pub fn certify_nonconcavity(a: &Matrix, scan: &LevingerScan, tol: f64) -> ConcavityReport {
    let range = scan.range();
    let best = best_grid_pair(&scan.r);
    let max_margin = best.map_or(0.0, |(_, _, m)| m);
    let witness = best.and_then(|(i, j, margin)| {
        if margin <= tol {
            return None;
        }
        let (t1, t2) = (scan.t_grid[i], scan.t_grid[j]);
        let verified_margin = chord_margin(a, t1, t2).ok()?;
        (verified_margin > tol).then_some(Witness {
            t1,
            t2,
            margin,
            verified_margin,
        })
    });
    let verdict = if witness.is_some() {
        Verdict::Nonconcave
    } else if range <= tol {
        Verdict::Constant
    } else {
        Verdict::ConcaveOnGrid
    };
    ConcavityReport {
        verdict,
        witness,
        range,
        max_margin,
    }
}

/// Largest drop against the unimodal shape: a decrease on `[0, 1/2]` or an
/// increase on `[1/2, 1]`. Pairs straddling `1/2` are not checked.
pub fn unimodality_violation(scan: &LevingerScan) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 1..scan.len() {
        let (t0, t1) = (scan.t_grid[k - 1], scan.t_grid[k]);
        let step = scan.r[k] - scan.r[k - 1];
        if !step.is_finite() {
            continue;
        }
        if t1 <= 0.5 {
            worst = worst.max(-step);
        } else if t0 >= 0.5 {
            worst = worst.max(step);
        }
    }
    worst
}

/// Whether `r` rises on `[0, 1/2]` and falls on `[1/2, 1]`, up to `tol`.
pub fn check_unimodality(scan: &LevingerScan, tol: f64) -> bool {
    scan.r.iter().all(|v| v.is_finite()) && unimodality_violation(scan) <= tol
}

/// Half-width of the largest interval `[1/2 − w, 1/2 + w]` on which every
/// available sampled `d2r` is at most `slack`. Zero when the sample nearest
/// `1/2` already violates it.
pub fn concave_neighborhood(scan: &LevingerScan, slack: f64) -> f64 {
    let mut order: Vec<usize> = (0..scan.len()).collect();
    order.sort_by(|&i, &j| {
        (scan.t_grid[i] - 0.5)
            .abs()
            .total_cmp(&(scan.t_grid[j] - 0.5).abs())
    });
    let mut width = 0.0;
    for k in order {
        let dist = (scan.t_grid[k] - 0.5).abs();
        match scan.d2r[k] {
            Some(v) if v > slack => return width,
            _ => width = dist,
        }
    }
    width
}
