use serde::Serialize;

use super::scan::levinger_radius;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Which finite-difference stencil produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    Central,
    /// Uses `t, t+h, t+2h, t+3h`; chosen when `t − h < 0`.
    Forward,
    /// Uses `t, t−h, t−2h, t−3h`; chosen when `t + h > 1`.
    Backward,
}

impl Stencil {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Central => "central",
            Self::Forward => "forward",
            Self::Backward => "backward",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeEstimate {
    pub t: f64,
    pub value: f64,
    pub stencil: Stencil,
}

fn pick_stencil(t: f64, h: f64, reach: f64) -> Result<Stencil> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::NoStencil { t, step: h });
    }
    if t - h >= 0.0 && t + h <= 1.0 {
        Ok(Stencil::Central)
    } else if t - h < 0.0 && t + reach * h <= 1.0 {
        Ok(Stencil::Forward)
    } else if t + h > 1.0 && t - reach * h >= 0.0 {
        Ok(Stencil::Backward)
    } else {
        Err(Error::NoStencil { t, step: h })
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::param("fd_step", h, "must be positive"))
    }
}

/// Richardson-extrapolated second derivative of `f` at `t`: `(4·D(h/2) − D(h))/3`.
///
/// `D` is the three-point central difference when it fits in `[0, 1]`, and
/// otherwise the second-order one-sided difference
/// `(2f₀ − 5f₁ + 4f₂ − f₃)/h²` pointing into the interval.
pub fn second_derivative_of<F>(f: F, t: f64, h: f64) -> Result<DerivativeEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    check_step(h)?;
    let stencil = pick_stencil(t, h, 3.0)?;
    let f0 = f(t)?;
    let d = |h: f64| -> Result<f64> {
        match stencil {
            Stencil::Central => Ok((f(t + h)? - 2.0 * f0 + f(t - h)?) / (h * h)),
            Stencil::Forward | Stencil::Backward => {
                let s = if stencil == Stencil::Forward { h } else { -h };
                let (f1, f2, f3) = (f(t + s)?, f(t + 2.0 * s)?, f(t + 3.0 * s)?);
                Ok((2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h))
            }
        }
    };
    let value = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok(DerivativeEstimate { t, value, stencil })
}

/// Richardson-extrapolated first derivative of `f` at `t`, central when it
/// fits and otherwise `(−3f₀ + 4f₁ − f₂)/(2h)` pointing inward.
pub fn first_derivative_of<F>(f: F, t: f64, h: f64) -> Result<DerivativeEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    check_step(h)?;
    let stencil = pick_stencil(t, h, 2.0)?;
    let d = |h: f64| -> Result<f64> {
        match stencil {
            Stencil::Central => Ok((f(t + h)? - f(t - h)?) / (2.0 * h)),
            Stencil::Forward | Stencil::Backward => {
                let s = if stencil == Stencil::Forward { h } else { -h };
                Ok((-3.0 * f(t)? + 4.0 * f(t + s)? - f(t + 2.0 * s)?) / (2.0 * s))
            }
        }
    };
    let value = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok(DerivativeEstimate { t, value, stencil })
}

/// `r''(t)` of the Levinger function of `a`, see [`second_derivative_of`].
pub fn second_derivative(a: &Matrix, t: f64, fd_step: f64) -> Result<DerivativeEstimate> {
    second_derivative_of(|s| levinger_radius(a, s), t, fd_step)
}

/// `r'(t)` of the Levinger function of `a`, see [`first_derivative_of`].
pub fn first_derivative(a: &Matrix, t: f64, fd_step: f64) -> Result<DerivativeEstimate> {
    first_derivative_of(|s| levinger_radius(a, s), t, fd_step)
}
