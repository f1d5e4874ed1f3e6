//! Spectral radius along Levinger's homotopy `B(t) = (1-t)A + tAᵀ`.
//!
//! The crate builds the matrix families whose Levinger function
//! `r(t) = ρ(B(t))` is known to be concave, constant, or nonconcave,
//! evaluates `r(t)` with self-contained eigensolvers, and checks concavity
//! claims mechanically: three-point witnesses for nonconcavity, closed-form
//! curves as oracles, and the null-space criterion for constant `r(t)`.
//!
//! Modules:
//! * [`matrix`]: dense square matrices, homotopies, decompositions.
//! * [`spectra`]: Perron root, full spectrum, symmetric eigendecomposition.
//! * [`families`]: constructors and closed forms for each matrix family.
//! * [`analysis`]: scans, derivatives, concavity and constancy verdicts.

pub mod analysis;
pub mod error;
pub mod families;
pub mod matrix;
pub mod spectra;

pub use error::{Error, Result};
pub use matrix::Matrix;
