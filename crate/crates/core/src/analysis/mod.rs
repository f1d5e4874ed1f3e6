//! Sampling and certification of Levinger functions `r(t) = ρ((1−t)A + tAᵀ)`.

mod concavity;
mod constant;
mod crossing;
mod derivative;
mod scan;
mod weight_limit;

pub use concavity::{
    certify_nonconcavity, chord_margin, chord_margin_with, check_unimodality,
    concave_neighborhood, unimodality_violation, ConcavityReport, Verdict, Witness,
};
pub use constant::{
    constant_levinger_residual, is_constant_levinger, kqp_coupling, kqp_structure_check,
    skew_singularity_check, SkewSingularity, SKEW_SINGULAR_TOL,
};
pub use crossing::{
    directsum_crossing, directsum_crossings, CrossingCertificate, CROSSING_GAP_TOL,
    CROSSING_GRID, DEFAULT_SLOPE_TOL, SLOPE_STEP,
};
pub use derivative::{
    first_derivative, first_derivative_of, second_derivative, second_derivative_of,
    DerivativeEstimate, Stencil,
};
pub use scan::{
    levinger_radius, scan, scan_grid, uniform_grid, LevingerScan, ScanFailure, MAX_SCAN_STEP,
};
pub use weight_limit::{
    weight_limit_experiment, WeightLimitStep, WeightLimitSummary, BOUNDARY_WINDOW,
};

pub const DEFAULT_GRID_SIZE: usize = 1001;
pub const DEFAULT_FD_STEP: f64 = 1e-4;
/// Margin a chord must beat before concavity counts as violated.
pub const DEFAULT_CONCAVITY_TOL: f64 = 1e-7;
