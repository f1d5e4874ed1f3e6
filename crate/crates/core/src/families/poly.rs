use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Real polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `λ^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// All complex roots by simultaneous Aberth–Ehrlich iteration, polished
    /// with a few Newton steps.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[n];
        let radius = 1.0
            + self.coeffs[..n]
                .iter()
                .fold(0.0_f64, |m, c| m.max((c / lead).abs()));
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        for _ in 0..1000 {
            let mut largest_step: f64 = 0.0;
            for k in 0..n {
                let (p, dp) = self.eval_with_derivative(z[k]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| {
                        let d = z[k] - z[j];
                        if d.norm() == 0.0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            1.0 / d
                        }
                    })
                    .sum();
                let step = ratio / (1.0 - ratio * repulsion);
                if step.is_finite() {
                    z[k] -= step;
                    largest_step = largest_step.max(step.norm() / (1.0 + z[k].norm()));
                }
            }
            if largest_step < 1e-16 {
                break;
            }
        }
        for root in &mut z {
            for _ in 0..3 {
                let (p, dp) = self.eval_with_derivative(*root);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                if step.is_finite() {
                    *root -= step;
                }
            }
        }
        z
    }
}

/// Characteristic polynomial `det(λI − A(α, β))` of the hollow tridiagonal
/// matrix with `α·upper[k]` at `(k, k+1)` and `β·lower[k]` at `(k+1, k)`.
///
/// Uses the three-term recurrence
/// `p_k = λ·p_{k−1} − αβ·upper[k−2]·lower[k−2]·p_{k−2}` with `p_0 = 1`,
/// `p_1 = λ`. The result has dimension `upper.len() + 1`.
pub fn jacobi_charpoly(upper: &[f64], lower: &[f64], alpha: f64, beta: f64) -> Result<Polynomial> {
    if upper.is_empty() {
        return Err(Error::InvalidSpec("weight list is empty".into()));
    }
    if upper.len() != lower.len() {
        return Err(Error::DimensionMismatch {
            expected: upper.len(),
            got: lower.len(),
        });
    }
    if let Some(&bad) = upper.iter().chain(lower).find(|x| !x.is_finite()) {
        return Err(Error::param("weight", bad, "must be finite"));
    }
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 1.0];
    for (u, l) in upper.iter().zip(lower) {
        let coupling = alpha * beta * u * l;
        let mut next = vec![0.0; cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= coupling * c;
        }
        prev = cur;
        cur = next;
    }
    Ok(Polynomial::new(cur))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let p = jacobi_charpoly(&[1.0], &[1.0], 1.0, 1.0).unwrap();
        assert_eq!(p.coeffs(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn three_by_three() {
        let p = jacobi_charpoly(&[1.0, 1.0], &[1.0, 1.0], 1.0, 1.0).unwrap();
        assert_eq!(p.coeffs(), &[0.0, -2.0, 0.0, 1.0]);
        let q = jacobi_charpoly(&[2.0, 3.0], &[0.5, 1.5], 1.0, 1.0).unwrap();
        // λ³ − λ(c12c21 + c23c32)
        assert_eq!(q.coeffs(), &[0.0, -(1.0 + 4.5), 0.0, 1.0]);
    }

    #[test]
    fn errors() {
        assert!(jacobi_charpoly(&[], &[], 1.0, 1.0).is_err());
        assert!(jacobi_charpoly(&[1.0], &[1.0, 2.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn roots_of_known_polynomials() {
        // (x − 1)(x + 2)(x² + 1)
        let p = Polynomial::new(vec![-2.0, 1.0, -1.0, 1.0, 1.0]);
        let mut roots = p.roots();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let want = [
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ];
        for (r, w) in roots.iter().zip(want) {
            assert!((r - w).norm() < 1e-12, "{r} vs {w}");
        }
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.eval(3.0), 7.0);
        assert_eq!(p.coeff(5), 0.0);
    }
}
