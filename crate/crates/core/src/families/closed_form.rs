//! Closed-form Levinger curves `r(t)`, `r'(t)`, `r''(t)` for the families
//! where they are known. They serve as oracles for the numerical path.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectra::Spectrum;

/// A closed-form curve on `t ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClosedFormCurve {
    /// `[[a, b], [c, d]]`.
    TwoByTwo { a: f64, b: f64, c: f64, d: f64 },
    /// Eigenvalue `λ_k` of the tridiagonal Toeplitz family; `k = 1` is `r(t)`.
    Tridiagonal {
        n: usize,
        k: usize,
        sub: f64,
        diag: f64,
        sup: f64,
    },
    /// Fiedler's three-parameter Toeplitz family.
    Fiedler { n: usize, u: f64, v: f64, w: f64 },
    /// `√(t(1−t))·profile`, the weighted shift family.
    Shift { profile: f64 },
}

impl ClosedFormCurve {
    pub fn r(&self, t: f64) -> f64 {
        match *self {
            Self::TwoByTwo { a, b, c, d } => {
                (a + d + two_by_two_discriminant(a, b, c, d, t).sqrt()) / 2.0
            }
            Self::Tridiagonal {
                n,
                k,
                sub,
                diag,
                sup,
            } => {
                let (p, q) = tridiag_factors(sub, sup, t);
                diag + 2.0 * (p * q).sqrt() * tridiag_cos(n, k)
            }
            Self::Fiedler { n, u, v, w } => {
                let (p, q) = fiedler_factors(u, v, t);
                let (hi, lo) = fiedler_exponents(n);
                w + p.powf(hi) * q.powf(lo) + p.powf(lo) * q.powf(hi)
            }
            Self::Shift { profile } => (t * (1.0 - t)).sqrt() * profile,
        }
    }

    pub fn dr(&self, t: f64) -> f64 {
        match *self {
            Self::TwoByTwo { a, b, c, d } => {
                (1.0 - 2.0 * t) * (b - c).powi(2) / two_by_two_discriminant(a, b, c, d, t).sqrt()
            }
            Self::Tridiagonal {
                n, k, sub, sup, ..
            } => {
                let (p, q) = tridiag_factors(sub, sup, t);
                tridiag_cos(n, k) * (sub - sup).powi(2) * (1.0 - 2.0 * t) / (p * q).sqrt()
            }
            Self::Fiedler { n, u, v, .. } => {
                let (p, q) = fiedler_factors(u, v, t);
                let (hi, lo) = fiedler_exponents(n);
                let g = p.powf(hi) * q.powf(lo);
                let h = p.powf(lo) * q.powf(hi);
                (v - u) * (g * (hi / p - lo / q) + h * (lo / p - hi / q))
            }
            Self::Shift { profile } => {
                profile * (1.0 - 2.0 * t) / (2.0 * (t * (1.0 - t)).sqrt())
            }
        }
    }

    pub fn d2r(&self, t: f64) -> f64 {
        match *self {
            Self::TwoByTwo { a, b, c, d } => {
                -2.0 * (b - c).powi(2) * ((a - d).powi(2) + (b + c).powi(2))
                    / two_by_two_discriminant(a, b, c, d, t).powf(1.5)
            }
            Self::Tridiagonal {
                n, k, sub, sup, ..
            } => {
                let (p, q) = tridiag_factors(sub, sup, t);
                -tridiag_cos(n, k) * (sub * sub - sup * sup).powi(2) / (2.0 * (p * q).powf(1.5))
            }
            Self::Fiedler { n, u, v, .. } => {
                let (p, q) = fiedler_factors(u, v, t);
                let (hi, lo) = fiedler_exponents(n);
                let nf = n as f64;
                let sum = p.powf(hi) * q.powf(lo) + p.powf(lo) * q.powf(hi);
                -(nf - 1.0) / (nf * nf) * (u - v).powi(2) * (u + v).powi(2) * sum / (p * q).powi(2)
            }
            Self::Shift { profile } => -profile / (4.0 * (t * (1.0 - t)).powf(1.5)),
        }
    }
}

fn two_by_two_discriminant(a: f64, b: f64, c: f64, d: f64, t: f64) -> f64 {
    (a - d).powi(2) + 4.0 * t * (1.0 - t) * (b - c).powi(2) + 4.0 * b * c
}

/// Subdiagonal and superdiagonal of `B(t)` for the tridiagonal family.
fn tridiag_factors(sub: f64, sup: f64, t: f64) -> (f64, f64) {
    ((1.0 - t) * sub + t * sup, t * sub + (1.0 - t) * sup)
}

fn tridiag_cos(n: usize, k: usize) -> f64 {
    (k as f64 * PI / (n as f64 + 1.0)).cos()
}

fn fiedler_factors(u: f64, v: f64, t: f64) -> (f64, f64) {
    ((1.0 - t) * u + t * v, (1.0 - t) * v + t * u)
}

fn fiedler_exponents(n: usize) -> (f64, f64) {
    let nf = n as f64;
    (1.0 - 1.0 / nf, 1.0 / nf)
}

fn require_positive(name: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::param(name, x, "must be positive"));
    }
    Ok(())
}

fn require_nonnegative(name: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::param(name, x, "must be nonnegative"));
    }
    Ok(())
}

/// Levinger curve of `[[a, b], [c, d]]`, all entries positive.
pub fn closed_levinger_2x2(a: f64, b: f64, c: f64, d: f64) -> Result<ClosedFormCurve> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_positive("c", c)?;
    require_positive("d", d)?;
    Ok(ClosedFormCurve::TwoByTwo { a, b, c, d })
}

/// Eigenvalue curves of Levinger's homotopy of the `n×n` tridiagonal
/// Toeplitz matrix with subdiagonal `a`, diagonal `b`, superdiagonal `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TridiagonalForms {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TridiagonalForms {
    /// Curve of `λ_k`, `k ∈ 1..=n`.
    pub fn eigenvalue_curve(&self, k: usize) -> ClosedFormCurve {
        assert!((1..=self.n).contains(&k), "eigenvalue index {k} out of range");
        ClosedFormCurve::Tridiagonal {
            n: self.n,
            k,
            sub: self.a,
            diag: self.b,
            sup: self.c,
        }
    }

    /// The Levinger curve `r(t) = λ_1(t)`.
    pub fn levinger(&self) -> ClosedFormCurve {
        self.eigenvalue_curve(1)
    }

    /// `λ_1(t), …, λ_n(t)` in index order.
    pub fn eigenvalues(&self, t: f64) -> Vec<f64> {
        (1..=self.n).map(|k| self.eigenvalue_curve(k).r(t)).collect()
    }
}

pub fn tridiag_closed_forms(n: usize, a: f64, b: f64, c: f64) -> Result<TridiagonalForms> {
    if n < 2 {
        return Err(Error::param("n", n as f64, "must be at least 2"));
    }
    require_nonnegative("a", a)?;
    require_nonnegative("b", b)?;
    require_nonnegative("c", c)?;
    if a.max(c) <= 0.0 {
        return Err(Error::param("max(a, c)", a.max(c), "must be positive"));
    }
    Ok(TridiagonalForms { n, a, b, c })
}

fn check_fiedler(n: usize, u: f64, v: f64, w: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::param("n", n as f64, "must be at least 3"));
    }
    require_positive("u", u)?;
    require_positive("v", v)?;
    require_positive("w", w)
}

/// Eigenvalues of Fiedler's Toeplitz matrix:
/// `λ_{j+1} = w + ωʲ·u^(1−1/n)·v^(1/n) + ω^(n−j)·u^(1/n)·v^(1−1/n)`, `ω = e^(2πi/n)`.
pub fn fiedler_eigs(n: usize, u: f64, v: f64, w: f64) -> Result<Spectrum> {
    check_fiedler(n, u, v, w)?;
    let (hi, lo) = fiedler_exponents(n);
    let x = u.powf(hi) * v.powf(lo);
    let y = u.powf(lo) * v.powf(hi);
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64);
    Ok(Spectrum::new(
        (0..n).map(|j| w + omega(j) * x + omega(n - j) * y).collect(),
    ))
}

pub fn fiedler_levinger(n: usize, u: f64, v: f64, w: f64) -> Result<ClosedFormCurve> {
    check_fiedler(n, u, v, w)?;
    Ok(ClosedFormCurve::Fiedler { n, u, v, w })
}

/// Fiedler's matrix with the corner entries `(1, n)` and `(n, 1)` exchanged,
/// which makes it the circulant with first row `(w, u, 0, …, 0, v)`.
pub fn circulant_from_fiedler(n: usize, u: f64, v: f64, w: f64) -> Result<Matrix> {
    if n < 3 {
        return Err(Error::param("n", n as f64, "must be at least 3"));
    }
    Matrix::from_fn(n, |i, j| {
        if i == j {
            w
        } else if j == (i + 1) % n {
            u
        } else if i == (j + 1) % n {
            v
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_examples() {
        let c = closed_levinger_2x2(1.0, 2.0, 3.0, 4.0).unwrap();
        let want = (5.0 + 34f64.sqrt()) / 2.0;
        assert!((c.r(0.5) - want).abs() < 1e-14);
        assert!((c.r(0.5) - 5.41548).abs() < 1e-5);
        for k in 1..100 {
            assert!(c.d2r(k as f64 / 100.0) < 0.0);
        }
        let flat = closed_levinger_2x2(1.0, 2.0, 2.0, 3.0).unwrap();
        let level = (4.0 + (4.0f64 + 16.0).sqrt()) / 2.0;
        for t in [0.1, 0.5, 0.9] {
            assert!((flat.r(t) - level).abs() < 1e-14);
            assert_eq!(flat.d2r(t), 0.0);
            assert_eq!(flat.dr(t), 0.0);
        }
        assert!(closed_levinger_2x2(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn tridiagonal_examples() {
        let f = tridiag_closed_forms(3, 1.0, 0.0, 1.0).unwrap();
        for t in [0.0, 0.3, 0.5] {
            assert!((f.levinger().r(t) - 2f64.sqrt()).abs() < 1e-15);
        }
        let f = tridiag_closed_forms(8, 2.0, 1.0, 3.0).unwrap();
        let want = 1.0 + 2.0 * 6f64.sqrt() * (PI / 9.0).cos();
        assert!((f.levinger().r(0.0) - want).abs() < 1e-14);
        let sym = tridiag_closed_forms(5, 2.0, 1.0, 2.0).unwrap();
        for t in [0.2, 0.7] {
            assert_eq!(sym.levinger().dr(t), 0.0);
            assert_eq!(sym.levinger().d2r(t), 0.0);
        }
        assert!(tridiag_closed_forms(4, 0.0, 1.0, 0.0).is_err());
        assert!(tridiag_closed_forms(1, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn fiedler_examples() {
        let s = fiedler_eigs(3, 1.0, 1.0, 1.0).unwrap();
        let want = Spectrum::new(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert!(s.max_distance(&want) < 1e-14);
        let c = fiedler_levinger(5, 1.0, 4.0, 2.0).unwrap();
        let want = 2.0 + 4f64.powf(0.2) + 4f64.powf(0.8);
        assert!((c.r(0.0) - want).abs() < 1e-14);
        let flat = fiedler_levinger(6, 1.5, 1.5, 0.7).unwrap();
        for t in [0.1, 0.5, 0.8] {
            assert!((flat.r(t) - (0.7 + 3.0)).abs() < 1e-14);
            assert_eq!(flat.d2r(t), 0.0);
        }
        assert!(fiedler_eigs(2, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn circulant_first_row() {
        let m = circulant_from_fiedler(5, 1.0, 4.0, 2.0).unwrap();
        assert_eq!(m.row(0), &[2.0, 1.0, 0.0, 0.0, 4.0]);
        assert_eq!(m.row(4), &[1.0, 0.0, 0.0, 4.0, 2.0]);
    }

    #[test]
    fn shift_curve_matches_hand_values() {
        let c = ClosedFormCurve::Shift { profile: 2.0 };
        assert!((c.r(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(c.dr(0.5), 0.0);
        assert!((c.d2r(0.5) + 2.0 / (4.0 * 0.125)).abs() < 1e-12);
    }
}
