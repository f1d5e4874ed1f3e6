//! Numerical paths checked against independent oracles written here.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use levinger_core::analysis::{first_derivative_of, second_derivative_of};
use levinger_core::families::{
    build, closed_levinger_2x2, fiedler_eigs, fiedler_levinger, jacobi_charpoly, swapped_shift,
    tridiag_closed_forms, weighted_shift, FamilySpec,
};
use levinger_core::matrix::levinger_homotopy;
use levinger_core::spectra::{full_spectrum, spectral_radius, Spectrum};
use levinger_core::{Matrix, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

/// Coefficients of `det(λI − A)`, ascending, by sampling at `λ = 0..=n` and
/// solving the Vandermonde system with partial pivoting.
fn charpoly_by_interpolation(a: &Matrix) -> Vec<f64> {
    let n = a.dim();
    let rows = a.rows();
    let mut sys: Vec<Vec<f64>> = (0..=n)
        .map(|k| {
            let lam = k as f64;
            let shifted: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { lam - rows[i][j] } else { -rows[i][j] })
                        .collect()
                })
                .collect();
            let mut row: Vec<f64> = (0..=n).map(|p| lam.powi(p as i32)).collect();
            row.push(cofactor_det(&shifted));
            row
        })
        .collect();
    let m = n + 1;
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&x, &y| sys[x][col].abs().total_cmp(&sys[y][col].abs()))
            .unwrap();
        sys.swap(col, piv);
        for r in 0..m {
            if r != col {
                let f = sys[r][col] / sys[col][col];
                for c in col..=m {
                    sys[r][c] -= f * sys[col][c];
                }
            }
        }
    }
    (0..m).map(|i| sys[i][m] / sys[i][i]).collect()
}

/// Durand–Kerner roots of a monic polynomial given ascending coefficients.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c / lead)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let denom: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| z[i] - z[j])
                .product();
            let step = eval(z[i]) / denom;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Matrix {
    Matrix::from_fn(n, |_, _| rng.gen_range(lo..hi)).unwrap()
}

#[test]
fn full_spectrum_matches_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..60 {
        let n = 1 + trial % 5;
        let a = random_matrix(&mut rng, n, -1.0, 1.0);
        let want = Spectrum::new(durand_kerner(&charpoly_by_interpolation(&a)));
        let got = full_spectrum(&a).unwrap();
        let d = got.max_distance(&want);
        assert!(d < 1e-7, "trial {trial}: {got:?} vs {want:?}");
    }
}

#[test]
fn perron_root_matches_full_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..60 {
        let n = 2 + trial % 12;
        let a = random_matrix(&mut rng, n, 0.0, 1.0);
        let perron = spectral_radius(&a).unwrap();
        let full = full_spectrum(&a).unwrap().spectral_radius();
        assert!((perron - full).abs() <= 1e-9 * full.max(1.0), "trial {trial}");
    }
}

#[test]
fn ex1_spectrum() {
    let a = build(&FamilySpec::Ex1Example).unwrap();
    for t in [0.09f64, 0.2, 0.5] {
        let s = (t * (1.0 - t)).sqrt();
        let want = Spectrum::new(vec![
            Complex64::new(0.4, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ]);
        let got = full_spectrum(&levinger_homotopy(&a, t).unwrap()).unwrap();
        assert!(got.max_distance(&want) < 1e-10, "t={t}");
    }
}

fn curve_grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|k| k as f64 / 100.0)
}

#[test]
fn two_by_two_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.01..5.0));
        let a = Matrix::from_rows(&[[p[0], p[1]], [p[2], p[3]]]).unwrap();
        let curve = closed_levinger_2x2(p[0], p[1], p[2], p[3]).unwrap();
        let r = |t: f64| -> Result<f64> { spectral_radius(&levinger_homotopy(&a, t)?) };
        for t in curve_grid() {
            assert!((r(t).unwrap() - curve.r(t)).abs() <= 1e-9, "{p:?} t={t}");
        }
        for k in 1..10 {
            let t = k as f64 / 10.0;
            let d2 = second_derivative_of(r, t, 1e-4).unwrap().value;
            assert!((d2 - curve.d2r(t)).abs() <= 1e-5, "{p:?} t={t}: {d2} vs {}", curve.d2r(t));
            assert!(curve.d2r(t) < 0.0);
        }
    }
}

/// Closed-form `r'` and `r''` agree with extrapolated differences of the
/// closed-form `r` itself.
#[test]
fn closed_form_derivatives_are_consistent() {
    let curves = [
        closed_levinger_2x2(1.0, 3.0, 0.5, 2.0).unwrap(),
        tridiag_closed_forms(8, 2.0, 1.0, 3.0).unwrap().levinger(),
        tridiag_closed_forms(5, 0.5, 0.0, 4.0).unwrap().eigenvalue_curve(4),
        fiedler_levinger(5, 1.0, 3.0, 0.5).unwrap(),
        fiedler_levinger(3, 3.5, 0.7, 2.0).unwrap(),
    ];
    for curve in curves {
        let r = |t: f64| Ok(curve.r(t));
        for k in 1..20 {
            let t = k as f64 / 20.0;
            let d1 = first_derivative_of(r, t, 1e-3).unwrap().value;
            let d2 = second_derivative_of(r, t, 1e-3).unwrap().value;
            let scale = 1.0 + curve.d2r(t).abs();
            assert!((d1 - curve.dr(t)).abs() <= 1e-6 * scale, "{curve:?} t={t}");
            assert!((d2 - curve.d2r(t)).abs() <= 1e-6 * scale, "{curve:?} t={t}");
        }
    }
}

#[test]
fn tridiagonal_curves() {
    let forms = tridiag_closed_forms(8, 2.0, 1.0, 3.0).unwrap();
    let a = build(&FamilySpec::TridiagToeplitz {
        n: 8,
        a: 2.0,
        b: 1.0,
        c: 3.0,
    })
    .unwrap();
    for t in curve_grid() {
        let p = (1.0 - t) * 2.0 + t * 3.0;
        let q = t * 2.0 + (1.0 - t) * 3.0;
        let want = 1.0 + 2.0 * (p * q).sqrt() * (PI / 9.0).cos();
        let got = spectral_radius(&levinger_homotopy(&a, t).unwrap()).unwrap();
        assert!((got - want).abs() <= 1e-10, "t={t}");
        assert!((forms.levinger().r(t) - want).abs() <= 1e-13);

        let numeric = full_spectrum(&levinger_homotopy(&a, t).unwrap()).unwrap();
        let closed = Spectrum::new(
            forms
                .eigenvalues(t)
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect(),
        );
        assert!(numeric.max_distance(&closed) <= 1e-9, "t={t}");
    }
    // Each eigenvalue curve keeps one curvature sign on (0, 1).
    for k in 1..=8 {
        let curve = forms.eigenvalue_curve(k);
        let signs: Vec<f64> = (1..100).map(|j| curve.d2r(j as f64 / 100.0)).collect();
        assert!(
            signs.iter().all(|v| *v <= 0.0) || signs.iter().all(|v| *v >= 0.0),
            "k={k}"
        );
    }
}

#[test]
fn fiedler_spectrum_and_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [3, 4, 5, 8] {
        for _ in 0..5 {
            let (u, v, w) = (
                rng.gen_range(0.5..4.0),
                rng.gen_range(0.5..4.0),
                rng.gen_range(0.5..4.0),
            );
            let a = build(&FamilySpec::FiedlerToeplitz { n, u, v, w }).unwrap();
            let got = full_spectrum(&a).unwrap();
            let want = fiedler_eigs(n, u, v, w).unwrap();
            assert!(got.max_distance(&want) <= 1e-8, "n={n}");
            let curve = fiedler_levinger(n, u, v, w).unwrap();
            for t in curve_grid() {
                let r = spectral_radius(&levinger_homotopy(&a, t).unwrap()).unwrap();
                assert!((r - curve.r(t)).abs() <= 1e-9, "n={n} t={t}");
                assert!(curve.d2r(t) <= 0.0);
            }
        }
    }
}

#[test]
fn charpoly_roots_scale_with_the_product() {
    let upper = [1.0, 2.0, 0.5, 3.0];
    let lower = [2.0, 1.0, 1.5, 0.25];
    let base = Spectrum::new(jacobi_charpoly(&upper, &lower, 1.0, 1.0).unwrap().roots());
    for alpha in [0.25, 1.0, 4.0] {
        for beta in [0.25, 1.0, 4.0] {
            let s = f64::sqrt(alpha * beta);
            let scaled = Spectrum::new(base.values().iter().map(|z| z * s).collect());
            let got = Spectrum::new(jacobi_charpoly(&upper, &lower, alpha, beta).unwrap().roots());
            assert!(got.max_distance(&scaled) <= 1e-8, "α={alpha} β={beta}");
        }
    }
    let four = Spectrum::new(jacobi_charpoly(&upper, &lower, 4.0, 1.0).unwrap().roots());
    let doubled = Spectrum::new(base.values().iter().map(|z| z * 2.0).collect());
    assert!(four.max_distance(&doubled) <= 1e-8);
}

#[test]
fn weighted_shift_profile_and_swaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let weights: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..3.0)).collect();
    let a = weighted_shift(&weights).unwrap();
    assert_eq!(a.dim(), 6);
    let f = spectral_radius(&levinger_homotopy(&a, 0.5).unwrap()).unwrap() / 0.5;
    for k in 1..10 {
        let t = k as f64 / 10.0;
        let r = spectral_radius(&levinger_homotopy(&a, t).unwrap()).unwrap();
        assert!((r / (t * (1.0 - t)).sqrt() - f).abs() <= 1e-9, "t={t}");
    }
    for mask in 0u32..32 {
        let swaps: Vec<bool> = (0..5).map(|i| mask >> i & 1 == 1).collect();
        let b = swapped_shift(&weights, &swaps).unwrap();
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let r0 = spectral_radius(&levinger_homotopy(&a, t).unwrap()).unwrap();
            let r1 = spectral_radius(&levinger_homotopy(&b, t).unwrap()).unwrap();
            assert!((r0 - r1).abs() <= 1e-10, "mask={mask} t={t}");
        }
    }
}
