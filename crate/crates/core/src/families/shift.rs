//! Weighted shift, cyclic weighted shift, and circuit matrices.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{levinger_homotopy, Matrix};
use crate::spectra::spectral_radius;

/// `c_j = base + sin(2πj/n)` for `j = 1..=n`.
pub fn reversible_cyclic_weights(n: usize, base: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::param("n", n as f64, "must be at least 2"));
    }
    if !(base > 1.0 && base.is_finite()) {
        return Err(Error::param("base", base, "must exceed 1"));
    }
    Ok((1..=n)
        .map(|j| base + (2.0 * PI * j as f64 / n as f64).sin())
        .collect())
}

pub(crate) fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidSpec("weight list is empty".into()));
    }
    if let Some(&w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(Error::param("weight", w, "must be nonnegative"));
    }
    Ok(())
}

/// `(n+1)×(n+1)` matrix with `weights[i]` at `(i, i+1)`.
pub fn weighted_shift(weights: &[f64]) -> Result<Matrix> {
    check_weights(weights)?;
    let n = weights.len() + 1;
    Matrix::from_fn(n, |i, j| if j == i + 1 { weights[i] } else { 0.0 })
}

/// `n×n` cyclic downshift with `weights[i]` at `(i, (i+1) mod n)`.
pub fn cyclic_weighted_shift(weights: &[f64]) -> Result<Matrix> {
    check_weights(weights)?;
    if weights.len() < 2 {
        return Err(Error::InvalidSpec(
            "cyclic weighted shift needs at least two weights".into(),
        ));
    }
    let n = weights.len();
    Matrix::from_fn(n, |i, j| if j == (i + 1) % n { weights[i] } else { 0.0 })
}

/// Hollow tridiagonal matrix derived from the weighted shift by moving
/// `weights[i]` to the subdiagonal position `(i+1, i)` wherever `swaps[i]`.
pub fn swapped_shift(weights: &[f64], swaps: &[bool]) -> Result<Matrix> {
    check_weights(weights)?;
    if swaps.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            got: swaps.len(),
        });
    }
    let n = weights.len() + 1;
    Matrix::from_fn(n, |i, j| {
        if j == i + 1 && !swaps[i] {
            weights[i]
        } else if i == j + 1 && swaps[j] {
            weights[j]
        } else {
            0.0
        }
    })
}

pub(crate) fn check_cycle(n: usize, cycle: &[usize], weights: &[f64]) -> Result<()> {
    check_weights(weights)?;
    if cycle.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: cycle.len(),
            got: weights.len(),
        });
    }
    if cycle.len() > n {
        return Err(Error::InvalidSpec(format!(
            "cycle of length {} does not fit in dimension {n}",
            cycle.len()
        )));
    }
    for (k, &i) in cycle.iter().enumerate() {
        if i >= n {
            return Err(Error::InvalidSpec(format!("cycle index {} exceeds {n}", i + 1)));
        }
        if cycle[..k].contains(&i) {
            return Err(Error::InvalidSpec(format!("cycle index {} repeats", i + 1)));
        }
    }
    Ok(())
}

/// `n×n` circuit matrix: `weights[p]` at `(cycle[p], cycle[p+1])`, closing
/// back to `cycle[0]`. Indices are zero-based.
pub fn circuit(n: usize, cycle: &[usize], weights: &[f64]) -> Result<Matrix> {
    check_cycle(n, cycle, weights)?;
    let k = cycle.len();
    let mut entries = vec![0.0; n * n];
    for p in 0..k {
        entries[cycle[p] * n + cycle[(p + 1) % k]] = weights[p];
    }
    Matrix::new(n, entries)
}

/// Rotates a circuit so it starts at its smallest index, carrying the
/// weights along. Ordering the principal submatrix by the rotated cycle
/// yields a cyclic weighted shift with the rotated weights.
pub fn canonical_cycle(cycle: &[usize], weights: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let start = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &i)| i)
        .map_or(0, |(p, _)| p);
    let mut c = cycle.to_vec();
    let mut w = weights.to_vec();
    c.rotate_left(start);
    w.rotate_left(start);
    (c, w)
}

/// Nonzero principal submatrix of a circuit matrix under the canonical
/// permutation of [`canonical_cycle`].
pub fn circuit_principal_shift(n: usize, cycle: &[usize], weights: &[f64]) -> Result<Matrix> {
    let full = circuit(n, cycle, weights)?;
    let (order, _) = canonical_cycle(cycle, weights);
    full.principal_submatrix(&order)
}

/// `f₁(c)` in `r(B(t)) = √(t(1−t))·f₁(c)` for the weighted shift with
/// weights `c`, computed as `r(B(1/2)) / (1/2)`.
pub fn shift_profile(weights: &[f64]) -> Result<f64> {
    check_weights(weights)?;
    if weights.iter().all(|&w| w == 0.0) {
        return Err(Error::InvalidSpec("all weights are zero".into()));
    }
    let a = weighted_shift(weights)?;
    Ok(spectral_radius(&levinger_homotopy(&a, 0.5)?)? / 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversible_weights() {
        let w = reversible_cyclic_weights(16, 16.0).unwrap();
        assert!((w[3] - 17.0).abs() < 1e-14);
        assert!((w[11] - 15.0).abs() < 1e-14);
        assert!((w[7] - 16.0).abs() < 1e-14);
        assert!((w[15] - 16.0).abs() < 1e-14);
        let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(min, w[11]);

        let w = reversible_cyclic_weights(4, 2.0).unwrap();
        for (x, y) in w.iter().zip([3.0, 2.0, 1.0, 2.0]) {
            assert!((x - y).abs() < 1e-15);
        }
        let w = reversible_cyclic_weights(2, 10.0).unwrap();
        for x in w {
            assert!((x - 10.0).abs() < 1e-14);
        }
        assert!(reversible_cyclic_weights(1, 10.0).is_err());
        assert!(reversible_cyclic_weights(4, 1.0).is_err());
    }

    #[test]
    fn cyclic_layout() {
        let a = cyclic_weighted_shift(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(
            a.rows(),
            vec![
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 2.0, 0.0],
                vec![0.0, 0.0, 0.0, 3.0],
                vec![4.0, 0.0, 0.0, 0.0],
            ]
        );
    }

    #[test]
    fn swaps_move_weights_below_the_diagonal() {
        let a = swapped_shift(&[1.0, 2.0, 3.0], &[false, true, false]).unwrap();
        assert_eq!(a.get(0, 1), 1.0);
        assert_eq!(a.get(2, 1), 2.0);
        assert_eq!(a.get(1, 2), 0.0);
        assert_eq!(a.get(2, 3), 3.0);
    }

    #[test]
    fn circuit_reduces_to_cyclic_shift() {
        let cycle = [4, 1, 3];
        let weights = [5.0, 6.0, 7.0];
        let (order, w) = canonical_cycle(&cycle, &weights);
        assert_eq!(order, vec![1, 3, 4]);
        assert_eq!(w, vec![6.0, 7.0, 5.0]);
        let sub = circuit_principal_shift(6, &cycle, &weights).unwrap();
        assert_eq!(sub, cyclic_weighted_shift(&w).unwrap());
        assert!(circuit(6, &[1, 1], &[1.0, 1.0]).is_err());
        assert!(circuit(3, &[0, 5], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn shift_profile_examples() {
        assert!((shift_profile(&[1.0]).unwrap() - 1.0).abs() < 1e-13);
        assert!((shift_profile(&[1.0, 1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-13);
        assert!(shift_profile(&[0.0, 0.0]).is_err());
        assert!(shift_profile(&[]).is_err());
    }
}
