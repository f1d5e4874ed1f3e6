//! Matrix families with known Levinger behaviour.
//!
//! [`FamilySpec`] describes a family member declaratively and [`build`]
//! turns it into a [`Matrix`]. Specs also have a small key-value text form
//! used for file-driven batch runs:
//!
//! ```text
//! kind = tridiag-toeplitz
//! n = 8
//! a = 2
//! b = 1
//! c = 3
//! ```
//!
//! Lists are comma separated, circuit indices are one-based, and a direct
//! sum nests its operands under `left.` and `right.` prefixes.

mod closed_form;
mod poly;
mod shift;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{direct_sum, Matrix};

pub use closed_form::{
    circulant_from_fiedler, closed_levinger_2x2, fiedler_eigs, fiedler_levinger,
    tridiag_closed_forms, ClosedFormCurve, TridiagonalForms,
};
pub use poly::{jacobi_charpoly, Polynomial};
pub use shift::{
    canonical_cycle, circuit, circuit_principal_shift, cyclic_weighted_shift,
    reversible_cyclic_weights, shift_profile, swapped_shift, weighted_shift,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FamilySpec {
    /// `[[a, b], [c, d]]`.
    TwoByTwo { a: f64, b: f64, c: f64, d: f64 },
    /// Subdiagonal `a`, diagonal `b`, superdiagonal `c`.
    TridiagToeplitz { n: usize, a: f64, b: f64, c: f64 },
    /// Fiedler's Toeplitz matrix: diagonal `w`, superdiagonal and `(1, n)`
    /// corner `u`, subdiagonal and `(n, 1)` corner `v`.
    FiedlerToeplitz { n: usize, u: f64, v: f64, w: f64 },
    /// Fiedler's matrix with its corners exchanged (a circulant).
    FiedlerCirculant { n: usize, u: f64, v: f64, w: f64 },
    WeightedShift { weights: Vec<f64> },
    CyclicWeightedShift { weights: Vec<f64> },
    /// Zero-based cycle indices.
    Circuit {
        n: usize,
        cycle: Vec<usize>,
        weights: Vec<f64>,
    },
    /// The 4×4 Toeplitz matrix with a nonconcave Levinger function.
    FourParamToeplitzExample,
    /// `[[0, 1, 0], [0, 0, 0], [0, 0, 2/5]]`.
    Ex1Example,
    /// `(1−h)A₁ ⊕ hA₂` with the two 2×2 blocks of [`four_by_four_blocks`].
    FourByFourExample { h: f64 },
    DirectSum(Box<FamilySpec>, Box<FamilySpec>),
}

/// The 4×4 Toeplitz matrix `[[5,0,6,0],[1,5,0,6],[0,1,5,0],[8,0,1,5]]`.
pub fn toeplitz_4param() -> Matrix {
    Matrix::from_rows(&[
        [5.0, 0.0, 6.0, 0.0],
        [1.0, 5.0, 0.0, 6.0],
        [0.0, 1.0, 5.0, 0.0],
        [8.0, 0.0, 1.0, 5.0],
    ])
    .expect("valid literal")
}

pub fn ex1() -> Matrix {
    Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.4]]).expect("valid literal")
}

/// Blocks `(1−h)A₁` and `hA₂` of the two-block 4×4 example.
pub fn four_by_four_blocks(h: f64) -> Result<(Matrix, Matrix)> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::param("h", h, "must lie in [0, 1]"));
    }
    let a1 = Matrix::from_rows(&[[0.0, 511.0 / 512.0], [1.0 / 512.0, 0.0]])?;
    let a2 = Matrix::from_rows(&[[0.0, 1.0 / 8.0], [7.0 / 8.0, 0.0]])?;
    Ok((a1.scale(1.0 - h), a2.scale(h)))
}

fn nonneg(name: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::param(name, x, "must be nonnegative"));
    }
    Ok(())
}

fn positive(name: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::param(name, x, "must be positive"));
    }
    Ok(())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::TwoByTwo { a, b, c, d } => {
                nonneg("a", *a)?;
                nonneg("b", *b)?;
                nonneg("c", *c)?;
                nonneg("d", *d)
            }
            Self::TridiagToeplitz { n, a, b, c } => {
                if *n < 2 {
                    return Err(Error::param("n", *n as f64, "must be at least 2"));
                }
                nonneg("a", *a)?;
                nonneg("b", *b)?;
                nonneg("c", *c)?;
                if a.max(*c) <= 0.0 {
                    return Err(Error::param("max(a, c)", a.max(*c), "must be positive"));
                }
                Ok(())
            }
            Self::FiedlerToeplitz { n, u, v, w } | Self::FiedlerCirculant { n, u, v, w } => {
                if *n < 3 {
                    return Err(Error::param("n", *n as f64, "must be at least 3"));
                }
                positive("u", *u)?;
                positive("v", *v)?;
                positive("w", *w)
            }
            Self::WeightedShift { weights } => shift::check_weights(weights),
            Self::CyclicWeightedShift { weights } => {
                shift::check_weights(weights)?;
                if weights.len() < 2 {
                    return Err(Error::InvalidSpec(
                        "cyclic weighted shift needs at least two weights".into(),
                    ));
                }
                Ok(())
            }
            Self::Circuit { n, cycle, weights } => shift::check_cycle(*n, cycle, weights),
            Self::FourParamToeplitzExample | Self::Ex1Example => Ok(()),
            Self::FourByFourExample { h } => four_by_four_blocks(*h).map(|_| ()),
            Self::DirectSum(l, r) => {
                l.validate()?;
                r.validate()
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::TwoByTwo { .. } => "two-by-two",
            Self::TridiagToeplitz { .. } => "tridiag-toeplitz",
            Self::FiedlerToeplitz { .. } => "fiedler-toeplitz",
            Self::FiedlerCirculant { .. } => "fiedler-circulant",
            Self::WeightedShift { .. } => "weighted-shift",
            Self::CyclicWeightedShift { .. } => "cyclic-weighted-shift",
            Self::Circuit { .. } => "circuit",
            Self::FourParamToeplitzExample => "toeplitz-4param",
            Self::Ex1Example => "ex1",
            Self::FourByFourExample { .. } => "four-by-four",
            Self::DirectSum(..) => "direct-sum",
        }
    }

    /// Closed-form Levinger curve, when the family has one.
    pub fn closed_form(&self) -> Result<Option<ClosedFormCurve>> {
        self.validate()?;
        Ok(match self {
            Self::TwoByTwo { a, b, c, d } => Some(closed_levinger_2x2(*a, *b, *c, *d)?),
            Self::TridiagToeplitz { n, a, b, c } => {
                Some(tridiag_closed_forms(*n, *a, *b, *c)?.levinger())
            }
            Self::FiedlerToeplitz { n, u, v, w } => Some(fiedler_levinger(*n, *u, *v, *w)?),
            Self::WeightedShift { weights } if weights.iter().any(|&w| w > 0.0) => {
                Some(ClosedFormCurve::Shift {
                    profile: shift_profile(weights)?,
                })
            }
            _ => None,
        })
    }
}

pub fn build(spec: &FamilySpec) -> Result<Matrix> {
    spec.validate()?;
    match spec {
        FamilySpec::TwoByTwo { a, b, c, d } => Matrix::from_rows(&[[*a, *b], [*c, *d]]),
        FamilySpec::TridiagToeplitz { n, a, b, c } => Matrix::from_fn(*n, |i, j| {
            if i == j {
                *b
            } else if i == j + 1 {
                *a
            } else if j == i + 1 {
                *c
            } else {
                0.0
            }
        }),
        FamilySpec::FiedlerToeplitz { n, u, v, w } => {
            let n = *n;
            Matrix::from_fn(n, |i, j| {
                if i == j {
                    *w
                } else if j == i + 1 || (i == 0 && j == n - 1) {
                    *u
                } else if i == j + 1 || (i == n - 1 && j == 0) {
                    *v
                } else {
                    0.0
                }
            })
        }
        FamilySpec::FiedlerCirculant { n, u, v, w } => circulant_from_fiedler(*n, *u, *v, *w),
        FamilySpec::WeightedShift { weights } => weighted_shift(weights),
        FamilySpec::CyclicWeightedShift { weights } => cyclic_weighted_shift(weights),
        FamilySpec::Circuit { n, cycle, weights } => circuit(*n, cycle, weights),
        FamilySpec::FourParamToeplitzExample => Ok(toeplitz_4param()),
        FamilySpec::Ex1Example => Ok(ex1()),
        FamilySpec::FourByFourExample { h } => {
            let (a1, a2) = four_by_four_blocks(*h)?;
            direct_sum(&a1, &a2)
        }
        FamilySpec::DirectSum(l, r) => direct_sum(&build(l)?, &build(r)?),
    }
}

// ---------------------------------------------------------------------------
// Key-value text form.

fn fmt_list<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl FamilySpec {
    fn write_fields(&self, prefix: &str, out: &mut Vec<(String, String)>) {
        let mut put = |k: &str, v: String| out.push((format!("{prefix}{k}"), v));
        put("kind", self.kind().to_string());
        match self {
            Self::TwoByTwo { a, b, c, d } => {
                put("a", format!("{a:?}"));
                put("b", format!("{b:?}"));
                put("c", format!("{c:?}"));
                put("d", format!("{d:?}"));
            }
            Self::TridiagToeplitz { n, a, b, c } => {
                put("n", n.to_string());
                put("a", format!("{a:?}"));
                put("b", format!("{b:?}"));
                put("c", format!("{c:?}"));
            }
            Self::FiedlerToeplitz { n, u, v, w } | Self::FiedlerCirculant { n, u, v, w } => {
                put("n", n.to_string());
                put("u", format!("{u:?}"));
                put("v", format!("{v:?}"));
                put("w", format!("{w:?}"));
            }
            Self::WeightedShift { weights } | Self::CyclicWeightedShift { weights } => {
                put("weights", fmt_list(weights.iter().map(|w| format!("{w:?}"))));
            }
            Self::Circuit { n, cycle, weights } => {
                put("n", n.to_string());
                put("cycle", fmt_list(cycle.iter().map(|i| i + 1)));
                put("weights", fmt_list(weights.iter().map(|w| format!("{w:?}"))));
            }
            Self::FourParamToeplitzExample | Self::Ex1Example => {}
            Self::FourByFourExample { h } => put("h", format!("{h:?}")),
            Self::DirectSum(l, r) => {
                l.write_fields(&format!("{prefix}left."), out);
                r.write_fields(&format!("{prefix}right."), out);
            }
        }
    }

    fn from_fields(fields: &BTreeMap<String, (usize, String)>, prefix: &str) -> Result<Self> {
        let get = |key: &str| -> Result<(usize, &str)> {
            fields
                .get(&format!("{prefix}{key}"))
                .map(|(line, v)| (*line, v.as_str()))
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("missing key {prefix}{key}"),
                })
        };
        let real = |key: &str| -> Result<f64> {
            let (line, v) = get(key)?;
            v.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("{prefix}{key}: invalid number {v:?}"),
            })
        };
        let int = |key: &str| -> Result<usize> {
            let (line, v) = get(key)?;
            v.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("{prefix}{key}: invalid integer {v:?}"),
            })
        };
        let reals = |key: &str| -> Result<Vec<f64>> {
            let (line, v) = get(key)?;
            v.split(',')
                .map(|s| {
                    s.trim().parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("{prefix}{key}: invalid number {s:?}"),
                    })
                })
                .collect()
        };
        let (kind_line, kind) = get("kind")?;
        let spec = match kind {
            "two-by-two" => Self::TwoByTwo {
                a: real("a")?,
                b: real("b")?,
                c: real("c")?,
                d: real("d")?,
            },
            "tridiag-toeplitz" => Self::TridiagToeplitz {
                n: int("n")?,
                a: real("a")?,
                b: real("b")?,
                c: real("c")?,
            },
            "fiedler-toeplitz" => Self::FiedlerToeplitz {
                n: int("n")?,
                u: real("u")?,
                v: real("v")?,
                w: real("w")?,
            },
            "fiedler-circulant" => Self::FiedlerCirculant {
                n: int("n")?,
                u: real("u")?,
                v: real("v")?,
                w: real("w")?,
            },
            "weighted-shift" => Self::WeightedShift {
                weights: reals("weights")?,
            },
            "cyclic-weighted-shift" => Self::CyclicWeightedShift {
                weights: reals("weights")?,
            },
            "circuit" => {
                let (line, v) = get("cycle")?;
                let cycle = v
                    .split(',')
                    .map(|s| match s.trim().parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(Error::Parse {
                            line,
                            msg: format!("{prefix}cycle: invalid one-based index {s:?}"),
                        }),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::Circuit {
                    n: int("n")?,
                    cycle,
                    weights: reals("weights")?,
                }
            }
            "toeplitz-4param" => Self::FourParamToeplitzExample,
            "ex1" => Self::Ex1Example,
            "four-by-four" => Self::FourByFourExample { h: real("h")? },
            "direct-sum" => Self::DirectSum(
                Box::new(Self::from_fields(fields, &format!("{prefix}left."))?),
                Box::new(Self::from_fields(fields, &format!("{prefix}right."))?),
            ),
            other => {
                return Err(Error::Parse {
                    line: kind_line,
                    msg: format!("unknown family kind {other:?}"),
                })
            }
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut fields = Vec::new();
        self.write_fields("", &mut fields);
        for (k, v) in fields {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for (k, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: k + 1,
                msg: format!("expected `key = value`, found {line:?}"),
            })?;
            let key = key.trim().to_string();
            if fields.contains_key(&key) {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: format!("duplicate key {key}"),
                });
            }
            fields.insert(key, (k + 1, value.trim().to_string()));
        }
        Self::from_fields(&fields, "")
    }
}

/// Parses a batch file: specs separated by lines consisting of `---`.
pub fn parse_spec_batch(text: &str) -> Result<Vec<FamilySpec>> {
    let mut specs = Vec::new();
    let mut block = String::new();
    let mut block_start = 0;
    for (offset, line) in text.lines().chain(std::iter::once("---")).enumerate() {
        if line.trim() == "---" {
            if !block.trim().is_empty() {
                let spec = block.parse::<FamilySpec>().map_err(|e| match e {
                    Error::Parse { line, msg } if line > 0 => Error::Parse {
                        line: line + block_start,
                        msg,
                    },
                    other => other,
                })?;
                specs.push(spec);
            }
            block.clear();
            block_start = offset + 1;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(specs)
}
