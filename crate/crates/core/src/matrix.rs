//! Dense square real matrices and the homotopies built on them.
//!
//! [`Matrix`] is an immutable, row-major, square container of finite reals.
//! Levinger's homotopy `B(t) = (1-t)A + tAᵀ` and its centered form
//! `C(p) = S + pK` (with `S`, `K` the symmetric and skew-symmetric parts)
//! are the two parametrizations used throughout the crate. They are related
//! by `C(p) = B((1-p)/2)`, so `C(1) = A` and `C(-1) = Aᵀ`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 256;

/// Relative tolerance for structural equality tests (symmetry, skewness).
pub const STRUCTURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix {
    n: usize,
    entries: Vec<f64>,
}

impl Matrix {
    /// Builds an `n×n` matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: k / n,
                col: k % n,
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Ragged {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    // Internal constructor for results of arithmetic on already-valid matrices.
    fn from_parts(n: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j];
            }
        }
        Self::from_parts(n, out)
    }

    fn check_same_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &Matrix, beta: f64) -> Result<Matrix> {
        self.check_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Matrix::new(self.n, entries)
    }

    pub fn scale(&self, alpha: f64) -> Matrix {
        Self::from_parts(self.n, self.entries.iter().map(|x| alpha * x).collect())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_dim(other)?;
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let brow = &other.entries[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += aik * b;
                }
            }
        }
        Matrix::new(n, out)
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Aᵀ x`.
    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        let mut out = vec![0.0; self.n];
        for (row, xi) in self.entries.chunks(self.n).zip(x) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_diagonal(&self) -> f64 {
        (0..self.n)
            .map(|i| self.get(i, i))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0.0)
    }

    /// Errors with the first negative entry, if any.
    pub fn ensure_nonnegative(&self) -> Result<()> {
        match self.entries.iter().position(|&x| x < 0.0) {
            None => Ok(()),
            Some(k) => Err(Error::NegativeEntry {
                row: k / self.n,
                col: k % self.n,
                value: self.entries[k],
            }),
        }
    }

    fn structure_tol(&self) -> f64 {
        STRUCTURE_TOL * self.max_abs()
    }

    pub fn is_symmetric(&self) -> bool {
        let tol = self.structure_tol();
        (0..self.n).all(|i| (i + 1..self.n).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let tol = self.structure_tol();
        (0..self.n).all(|i| (i..self.n).all(|j| (self.get(i, j) + self.get(j, i)).abs() <= tol))
    }

    /// Strongly connected components of the digraph with an edge `i → j`
    /// whenever `A[i][j] > 0`, in reverse topological order (Tarjan).
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.get(i, j) > 0.0).collect())
            .collect();
        let mut tarjan = Tarjan {
            succ: &succ,
            index: vec![usize::MAX; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next: 0,
            components: Vec::new(),
        };
        for v in 0..n {
            if tarjan.index[v] == usize::MAX {
                tarjan.visit(v);
            }
        }
        tarjan.components
    }

    /// The principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: bad + 1,
            });
        }
        Matrix::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// Plain-text form: `n` on the first line, then `n` rows.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

struct Tarjan<'a> {
    succ: &'a [Vec<usize>],
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: usize,
    components: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = self.next;
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for k in 0..self.succ[v].len() {
            let w = self.succ[v][k];
            if self.index[w] == usize::MAX {
                self.visit(w);
                self.low[v] = self.low[v].min(self.low[w]);
            } else if self.on_stack[w] {
                self.low[v] = self.low[v].min(self.index[w]);
            }
        }
        if self.low[v] == self.index[v] {
            let mut component = Vec::new();
            while let Some(w) = self.stack.pop() {
                self.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            component.sort_unstable();
            self.components.push(component);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.entries.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first,
            msg: format!("expected a dimension, found {header:?}"),
        })?;
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, text) in lines {
            if rows == n {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than {n} rows"),
                });
            }
            let row: Vec<f64> = text
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid number {tok:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    msg: format!("ragged row: {} entries, expected {n}", row.len()),
                });
            }
            entries.extend(row);
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse {
                line: first,
                msg: format!("expected {n} rows, found {rows}"),
            });
        }
        Matrix::new(n, entries)
    }
}

/// Symmetric and skew-symmetric parts, `A = sym + skew`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub sym: Matrix,
    pub skew: Matrix,
}

/// `p` range over which the centered homotopy stays nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtensionBound {
    Finite(f64),
    /// The matrix is symmetric, so `C(p)` is the same for every `p`.
    Infinite,
}

impl ExtensionBound {
    pub fn value(self) -> f64 {
        match self {
            ExtensionBound::Finite(x) => x,
            ExtensionBound::Infinite => f64::INFINITY,
        }
    }
}

fn check_unit_interval(name: &'static str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::param(name, t, "must lie in [0, 1]"));
    }
    Ok(())
}

/// `B(t) = (1-t)A + tAᵀ`.
pub fn levinger_homotopy(a: &Matrix, t: f64) -> Result<Matrix> {
    check_unit_interval("t", t)?;
    let n = a.dim();
    Matrix::from_fn(n, |i, j| (1.0 - t) * a.get(i, j) + t * a.get(j, i))
}

pub fn decompose(a: &Matrix) -> Decomposition {
    let n = a.dim();
    let sym = Matrix::from_parts(
        n,
        (0..n * n)
            .map(|k| 0.5 * (a.get(k / n, k % n) + a.get(k % n, k / n)))
            .collect(),
    );
    let skew = Matrix::from_parts(
        n,
        (0..n * n)
            .map(|k| 0.5 * (a.get(k / n, k % n) - a.get(k % n, k / n)))
            .collect(),
    );
    Decomposition { sym, skew }
}

/// `C(p) = S + pK`; equals `B((1-p)/2)`.
pub fn centered_homotopy(a: &Matrix, p: f64) -> Result<Matrix> {
    if !p.is_finite() {
        return Err(Error::param("p", p, "must be finite"));
    }
    let Decomposition { sym, skew } = decompose(a);
    sym.combine(1.0, &skew, p)
}

/// Largest `α` such that `C(p) ≥ 0` for all `|p| ≤ α`.
pub fn nonneg_extension_bound(a: &Matrix) -> Result<ExtensionBound> {
    a.ensure_nonnegative()?;
    let n = a.dim();
    let mut bound = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a.get(i, j), a.get(j, i));
            if x != y {
                bound = bound.min((x + y) / (x - y).abs());
            }
        }
    }
    Ok(if bound.is_finite() {
        ExtensionBound::Finite(bound)
    } else {
        ExtensionBound::Infinite
    })
}

/// Block-diagonal `A1 ⊕ A2`.
pub fn direct_sum(a1: &Matrix, a2: &Matrix) -> Result<Matrix> {
    let (n1, n2) = (a1.dim(), a2.dim());
    Matrix::from_fn(n1 + n2, |i, j| match (i < n1, j < n1) {
        (true, true) => a1.get(i, j),
        (false, false) => a2.get(i - n1, j - n1),
        _ => 0.0,
    })
}

/// Whether the strict-positivity digraph of `A` is strongly connected.
pub fn is_irreducible(a: &Matrix) -> Result<bool> {
    a.ensure_nonnegative()?;
    Ok(a.strong_components().len() == 1)
}

/// `A + eps·J` with `J` the all-ones matrix.
pub fn perturb_positive(a: &Matrix, eps: f64) -> Result<Matrix> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("eps", eps, "must be positive"));
    }
    Matrix::new(a.dim(), a.as_slice().iter().map(|x| x + eps).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> Matrix {
        Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.4]]).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(Error::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            Matrix::new(2, vec![0.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(Matrix::zeros(0), Err(Error::Dimension(0))));
        assert!(matches!(Matrix::zeros(257), Err(Error::Dimension(257))));
    }

    #[test]
    fn homotopy_endpoints_and_ex1() {
        let a = ex1();
        assert_eq!(levinger_homotopy(&a, 0.0).unwrap(), a);
        assert_eq!(levinger_homotopy(&a, 1.0).unwrap(), a.transpose());
        let b = levinger_homotopy(&a, 0.2).unwrap();
        let want = Matrix::from_rows(&[[0.0, 0.8, 0.0], [0.2, 0.0, 0.0], [0.0, 0.0, 0.4]]).unwrap();
        for (x, y) in b.as_slice().iter().zip(want.as_slice()) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!(levinger_homotopy(&a, 1.5).is_err());
        assert!(levinger_homotopy(&a, -0.1).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let d = decompose(&a);
        assert_eq!(d.sym.rows(), vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        assert_eq!(d.skew.rows(), vec![vec![0.0, 0.5], vec![-0.5, 0.0]]);

        let s = Matrix::from_rows(&[[1.0, 2.0], [2.0, 3.0]]).unwrap();
        let d = decompose(&s);
        assert_eq!(d.sym, s);
        assert_eq!(d.skew, Matrix::zeros(2).unwrap());

        let t = Matrix::from_rows(&[
            [5.0, 0.0, 6.0, 0.0],
            [1.0, 5.0, 0.0, 6.0],
            [0.0, 1.0, 5.0, 0.0],
            [8.0, 0.0, 1.0, 5.0],
        ])
        .unwrap();
        let d = decompose(&t);
        assert_eq!(d.sym.get(0, 3), 4.0);
        assert_eq!(d.skew.get(0, 3), -4.0);
        assert!(d.sym.is_symmetric());
        assert!(d.skew.is_skew_symmetric());
    }

    #[test]
    fn centered_homotopy_matches_levinger_reparametrization() {
        let a = Matrix::from_rows(&[[1.0, 3.0, 0.5], [0.2, 0.0, 2.0], [4.0, 1.0, 0.3]]).unwrap();
        let d = decompose(&a);
        assert_eq!(centered_homotopy(&a, 0.0).unwrap(), d.sym);
        let close = |x: &Matrix, y: &Matrix| {
            x.as_slice()
                .iter()
                .zip(y.as_slice())
                .all(|(p, q)| (p - q).abs() < 1e-14)
        };
        assert!(close(&centered_homotopy(&a, 1.0).unwrap(), &a));
        assert!(close(&centered_homotopy(&a, -1.0).unwrap(), &a.transpose()));
        for &p in &[-0.8, -0.3, 0.25, 0.9] {
            let c = centered_homotopy(&a, p).unwrap();
            let b = levinger_homotopy(&a, (1.0 - p) / 2.0).unwrap();
            assert!(close(&c, &b), "p = {p}");
        }
    }

    #[test]
    fn extension_bound_examples() {
        let s = Matrix::from_rows(&[[1.0, 2.0], [2.0, 0.0]]).unwrap();
        assert_eq!(nonneg_extension_bound(&s).unwrap(), ExtensionBound::Infinite);
        let a = Matrix::from_rows(&[[0.0, 3.0], [1.0, 0.0]]).unwrap();
        assert_eq!(nonneg_extension_bound(&a).unwrap(), ExtensionBound::Finite(2.0));
        let a = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(nonneg_extension_bound(&a).unwrap(), ExtensionBound::Finite(1.0));
        let neg = Matrix::from_rows(&[[0.0, -1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(
            nonneg_extension_bound(&neg),
            Err(Error::NegativeEntry { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let d = direct_sum(
            &Matrix::from_rows(&[[2.0]]).unwrap(),
            &Matrix::from_rows(&[[3.0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(d, Matrix::diagonal(&[2.0, 3.0]).unwrap());
        let blocks = direct_sum(
            &Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap(),
            &Matrix::from_rows(&[[0.4]]).unwrap(),
        )
        .unwrap();
        assert_eq!(blocks, ex1());
    }

    #[test]
    fn irreducibility() {
        let pos = Matrix::from_fn(3, |i, j| 1.0 + (i + 2 * j) as f64).unwrap();
        assert!(is_irreducible(&pos).unwrap());
        assert!(!is_irreducible(&ex1()).unwrap());
        let cyc = Matrix::from_fn(4, |i, j| if j == (i + 1) % 4 { 1.0 + i as f64 } else { 0.0 })
            .unwrap();
        assert!(is_irreducible(&cyc).unwrap());
        assert!(is_irreducible(&Matrix::from_rows(&[[0.0]]).unwrap()).unwrap());
        assert!(is_irreducible(&Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap()).is_err());
        assert_eq!(ex1().strong_components().len(), 3);
    }

    #[test]
    fn perturbation() {
        let z = Matrix::zeros(3).unwrap();
        let p = perturb_positive(&z, 1.0).unwrap();
        assert!(p.as_slice().iter().all(|&x| x == 1.0));
        assert!(is_irreducible(&perturb_positive(&ex1(), 1e-6).unwrap()).unwrap());
        assert!(perturb_positive(&z, 0.0).is_err());
        assert!(perturb_positive(&z, -1.0).is_err());
    }

    #[test]
    fn text_format() {
        let a = Matrix::from_rows(&[[0.5, 1.0], [2.0, 1e-20]]).unwrap();
        let text = a.to_text();
        assert_eq!(text.parse::<Matrix>().unwrap(), a);
        assert!("2\n1 2\n3\n".parse::<Matrix>().is_err());
        assert!("2\n1 2\n".parse::<Matrix>().is_err());
        assert!("2\n1 2\n3 x\n".parse::<Matrix>().is_err());
        assert!("\n3\n1 0 0\n0 1 0\n0 0 1\n\n".parse::<Matrix>().is_ok());
    }
}
