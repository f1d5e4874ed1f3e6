// Index loops mirror the textbook algorithms.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::Spectrum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// QR sweeps allowed per unit of dimension before giving up.
const SWEEPS_PER_DIM: usize = 30;

/// Row-major square scratch buffer.
struct Work {
    n: usize,
    a: Vec<f64>,
}

impl Work {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }
}

/// All eigenvalues of `a`.
///
/// Balances the matrix by powers of two, reduces it to upper Hessenberg form
/// with Householder reflectors, then runs Francis double-shift QR with
/// deflation. Complex eigenvalues come out as exact conjugate pairs.
pub fn full_spectrum(a: &Matrix) -> Result<Spectrum> {
    let n = a.dim();
    let mut w = Work {
        n,
        a: a.as_slice().to_vec(),
    };
    balance(&mut w);
    reduce_to_hessenberg(&mut w);
    let values = hessenberg_qr(&mut w)?;
    Ok(Spectrum::new(values))
}

/// Parlett–Reinsch balancing with radix 2, so only exponents change.
fn balance(w: &mut Work) {
    const RADIX: f64 = 2.0;
    let n = w.n;
    let sqrdx = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += w.at(j, i).abs();
                    r += w.at(i, j).abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        *w.at_mut(i, j) *= g;
                    }
                    for j in 0..n {
                        *w.at_mut(j, i) *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

fn reduce_to_hessenberg(w: &mut Work) {
    let n = w.n;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let norm = (k + 1..n).map(|i| w.at(i, k).powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = w.at(k + 1, k);
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for (idx, i) in (k + 1..n).enumerate() {
            v[idx] = w.at(i, k);
        }
        v[0] -= alpha;
        let vnorm2: f64 = v[..len].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // Left: rows k+1.., columns k..
        for j in k..n {
            let s: f64 = (0..len).map(|idx| v[idx] * w.at(k + 1 + idx, j)).sum();
            let f = 2.0 * s / vnorm2;
            for idx in 0..len {
                *w.at_mut(k + 1 + idx, j) -= f * v[idx];
            }
        }
        // Right: all rows, columns k+1..
        for i in 0..n {
            let s: f64 = (0..len).map(|idx| w.at(i, k + 1 + idx) * v[idx]).sum();
            let f = 2.0 * s / vnorm2;
            for idx in 0..len {
                *w.at_mut(i, k + 1 + idx) -= f * v[idx];
            }
        }
        *w.at_mut(k + 1, k) = alpha;
        for i in k + 2..n {
            *w.at_mut(i, k) = 0.0;
        }
    }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (EISPACK `hqr`
/// structure). Destroys the contents of `w`.
fn hessenberg_qr(w: &mut Work) -> Result<Vec<Complex64>> {
    let n = w.n;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += w.at(i, j).abs();
        }
    }
    let max_sweeps = SWEEPS_PER_DIM * n;
    let mut sweeps = 0;
    let mut shift_acc = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // Find a negligible subdiagonal element.
            let mut l = nn;
            while l >= 1 {
                let lu = l as usize;
                let mut s = w.at(lu - 1, lu - 1).abs() + w.at(lu, lu).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if w.at(lu, lu - 1).abs() + s == s {
                    *w.at_mut(lu, lu - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            let nu = nn as usize;
            let mut x = w.at(nu, nu);
            if l == nn {
                out[nu] = Complex64::new(x + shift_acc, 0.0);
                nn -= 1;
                break;
            }
            let mut y = w.at(nu - 1, nu - 1);
            let mut ww = w.at(nu, nu - 1) * w.at(nu - 1, nu);
            if l == nn - 1 {
                let pp = 0.5 * (y - x);
                let qq = pp * pp + ww;
                let z = qq.abs().sqrt();
                x += shift_acc;
                if qq >= 0.0 {
                    let z = pp + sign(z, pp);
                    let hi = x + z;
                    let lo = if z != 0.0 { x - ww / z } else { hi };
                    out[nu - 1] = Complex64::new(hi, 0.0);
                    out[nu] = Complex64::new(lo, 0.0);
                } else {
                    out[nu - 1] = Complex64::new(x + pp, z);
                    out[nu] = Complex64::new(x + pp, -z);
                }
                nn -= 2;
                break;
            }
            if sweeps >= max_sweeps {
                return Err(Error::NoConvergence("full_spectrum"));
            }
            if its == 10 || its == 20 {
                // Exceptional shift.
                shift_acc += x;
                for i in 0..=nu {
                    *w.at_mut(i, i) -= x;
                }
                let s = w.at(nu, nu - 1).abs() + w.at(nu - 1, nu - 2).abs();
                x = 0.75 * s;
                y = x;
                ww = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;
            // Look for two consecutive small subdiagonal elements.
            let (mut p, mut q, mut r);
            let mut m = nn - 2;
            loop {
                let mu = m as usize;
                let z = w.at(mu, mu);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - ww) / w.at(mu + 1, mu) + w.at(mu, mu + 1);
                q = w.at(mu + 1, mu + 1) - z - rr - ss;
                r = w.at(mu + 2, mu + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = w.at(mu, mu - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (w.at(mu - 1, mu - 1).abs() + z.abs() + w.at(mu + 1, mu + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            let mu = m as usize;
            for i in mu + 2..=nu {
                *w.at_mut(i, i - 2) = 0.0;
                if i != mu + 2 {
                    *w.at_mut(i, i - 3) = 0.0;
                }
            }
            // Double QR step on rows l..=nn and columns m..=nn.
            let lu = l as usize;
            let mut k = mu;
            while k < nu {
                let mut xk = 0.0;
                if k != mu {
                    p = w.at(k, k - 1);
                    q = w.at(k + 1, k - 1);
                    r = if k != nu - 1 { w.at(k + 2, k - 1) } else { 0.0 };
                    xk = p.abs() + q.abs() + r.abs();
                    if xk != 0.0 {
                        p /= xk;
                        q /= xk;
                        r /= xk;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == mu {
                        if l != m {
                            *w.at_mut(k, k - 1) = -w.at(k, k - 1);
                        }
                    } else {
                        *w.at_mut(k, k - 1) = -s * xk;
                    }
                    p += s;
                    let xf = p / s;
                    let yf = q / s;
                    let zf = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pj = w.at(k, j) + q * w.at(k + 1, j);
                        if k != nu - 1 {
                            pj += r * w.at(k + 2, j);
                            *w.at_mut(k + 2, j) -= pj * zf;
                        }
                        *w.at_mut(k + 1, j) -= pj * yf;
                        *w.at_mut(k, j) -= pj * xf;
                    }
                    let mmin = nu.min(k + 3);
                    for i in lu..=mmin {
                        let mut pi = xf * w.at(i, k) + yf * w.at(i, k + 1);
                        if k != nu - 1 {
                            pi += zf * w.at(i, k + 2);
                            *w.at_mut(i, k + 2) -= pi * r;
                        }
                        *w.at_mut(i, k + 1) -= pi * q;
                        *w.at_mut(i, k) -= pi;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ex1_at_one_fifth() {
        let b = Matrix::from_rows(&[[0.0, 0.8, 0.0], [0.2, 0.0, 0.0], [0.0, 0.0, 0.4]]).unwrap();
        let s = full_spectrum(&b).unwrap();
        let want = Spectrum::new(vec![c(0.4, 0.0), c(0.4, 0.0), c(-0.4, 0.0)]);
        assert!(s.max_distance(&want) < 1e-12, "{s:?}");
    }

    #[test]
    fn nilpotent_two_by_two() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let s = full_spectrum(&a).unwrap();
        assert!(s.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn cyclic_shift_gives_roots_of_unity() {
        let a = Matrix::from_fn(4, |i, j| if j == (i + 1) % 4 { 1.0 } else { 0.0 }).unwrap();
        let s = full_spectrum(&a).unwrap();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0)];
        for (z, w) in s.values().iter().zip(want) {
            assert!((z - w).norm() < 1e-12, "{z} vs {w}");
        }
    }

    #[test]
    fn complex_pairs_are_exact_conjugates() {
        let a = Matrix::from_rows(&[[1.0, -2.0, 0.5], [3.0, 0.0, 1.0], [0.0, 1.0, 2.0]]).unwrap();
        let s = full_spectrum(&a).unwrap();
        let values = s.values();
        for z in values.iter().filter(|z| z.im != 0.0) {
            assert!(values.iter().any(|w| *w == z.conj()));
        }
        assert!((s.sum().re - a.trace()).abs() < 1e-12);
    }

    #[test]
    fn one_by_one() {
        let s = full_spectrum(&Matrix::from_rows(&[[-3.5]]).unwrap()).unwrap();
        assert_eq!(s.values(), &[c(-3.5, 0.0)]);
    }
}
