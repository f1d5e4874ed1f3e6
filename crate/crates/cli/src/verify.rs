//! The acceptance suite and the per-matrix checks behind `levinger verify`.
//!
//! Every threshold is pinned in [`tol`]. Randomized checks draw from a
//! ChaCha8 generator seeded with [`DEFAULT_SEED`] unless told otherwise.

use std::f64::consts::PI;

use levinger_core::analysis::{
    certify_nonconcavity, chord_margin, chord_margin_with, check_unimodality, directsum_crossing,
    is_constant_levinger, kqp_structure_check, levinger_radius, scan_grid, second_derivative,
    skew_singularity_check, uniform_grid, unimodality_violation, weight_limit_experiment,
    LevingerScan, Verdict, WeightLimitSummary, DEFAULT_SLOPE_TOL,
};
use levinger_core::families::{
    build, circulant_from_fiedler, closed_levinger_2x2, cyclic_weighted_shift, ex1, fiedler_eigs,
    four_by_four_blocks, jacobi_charpoly, reversible_cyclic_weights, swapped_shift,
    toeplitz_4param, weighted_shift, FamilySpec,
};
use levinger_core::matrix::{
    decompose, direct_sum, is_irreducible, levinger_homotopy, perturb_positive,
};
use levinger_core::spectra::{full_spectrum, spectral_radius_with_tol, Spectrum};
use levinger_core::{Matrix, Result as CoreResult};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::args::Numerics;
use crate::report::Check;
use crate::source::Input;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Pinned thresholds.
pub mod tol {
    pub const EX1_SPECTRUM: f64 = 1e-10;
    pub const INEQ_MARGIN_FLOOR: f64 = 0.016;
    pub const INEQ_MARGIN_ABS: f64 = 1e-6;
    pub const CLOSED_FORM_R: f64 = 1e-9;
    pub const SECOND_DERIVATIVE: f64 = 1e-5;
    pub const TRIDIAG_R: f64 = 1e-10;
    pub const UNIMODAL_SLACK: f64 = 1e-9;
    pub const FIEDLER_SPECTRUM: f64 = 1e-8;
    pub const FIEDLER_D2R: f64 = 1e-7;
    pub const CIRCULANT_RANGE: f64 = 1e-10;
    pub const SHIFT_RATIO: f64 = 1e-9;
    pub const ROOT_SCALING: f64 = 1e-8;
    pub const SWAP_R: f64 = 1e-10;
    pub const CROSSING_DELTA: f64 = 1e-3;
    pub const CONSTANT_PREDICATE: f64 = 1e-8;
    pub const SCAN_RANGE: f64 = 1e-9;
    pub const MID_CONVERGENCE_NOISE: f64 = 1e-3;
    pub const BOUNDARY_GROWTH: f64 = 10.0;
    pub const TRANSPOSE_SYMMETRY: f64 = 1e-9;
    /// Power-iteration tolerance for re-verifying witnesses, ten times
    /// tighter than the default.
    pub const TIGHT_SOLVER: f64 = 1e-14;
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyConfig {
    #[serde(flatten)]
    pub numerics: Numerics,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            numerics: Numerics::default(),
            seed: DEFAULT_SEED,
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: usize,
    pub check: Check,
    pub witnesses: Vec<Json>,
}

type Outcome = CoreResult<(Check, Vec<Json>)>;

struct Ctx {
    cfg: VerifyConfig,
}

impl Ctx {
    fn grid(&self) -> Vec<f64> {
        uniform_grid(self.cfg.numerics.grid_size.max(3))
    }

    fn values(&self, a: &Matrix) -> CoreResult<LevingerScan> {
        scan_grid(a, &self.grid(), None)
    }

    fn with_derivatives(&self, a: &Matrix) -> CoreResult<LevingerScan> {
        scan_grid(a, &self.grid(), Some(self.cfg.numerics.fd_step))
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);
        rng
    }

    fn tol(&self) -> f64 {
        self.cfg.numerics.tol
    }
}

fn hundred_and_one() -> impl Iterator<Item = f64> {
    (0..=100).map(|k| k as f64 / 100.0)
}

fn tenths() -> impl Iterator<Item = f64> {
    (1..=9).map(|k| k as f64 / 10.0)
}

fn witness_json(label: &str, a: &Matrix, report: &levinger_core::analysis::ConcavityReport) -> Json {
    json!({
        "label": label,
        "matrix": a.rows(),
        "verdict": report.verdict.as_str(),
        "witness": report.witness,
    })
}

fn ex1_spectrum(_: &Ctx) -> Outcome {
    let a = ex1();
    let mut worst: f64 = 0.0;
    for t in [0.09f64, 0.2, 0.5] {
        let s = (t * (1.0 - t)).sqrt();
        let want = Spectrum::new(
            [0.4, s, -s].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        );
        worst = worst.max(full_spectrum(&levinger_homotopy(&a, t)?)?.max_distance(&want));
    }
    Ok((Check::at_most("ex1 spectrum at t = 0.09, 0.2, 0.5", worst, tol::EX1_SPECTRUM), vec![]))
}

fn ex1_witness(ctx: &Ctx) -> Outcome {
    let a = ex1();
    let margin = chord_margin(&a, 0.15, 0.25)?;
    let want = (0.4 + 0.1875f64.sqrt()) / 2.0 - 0.4;
    let mut check = Check::at_most(
        "ex1 chord margin on (0.15, 0.25)",
        (margin - want).abs(),
        tol::INEQ_MARGIN_ABS,
    )
    .and(margin > tol::INEQ_MARGIN_FLOOR, format!("margin {margin:.8} > 0.016"));
    let mut witnesses = Vec::new();
    for (label, m) in [("ex1", a.clone()), ("ex1 + 1e-6", perturb_positive(&a, 1e-6)?)] {
        let report = certify_nonconcavity(&m, &ctx.values(&m)?, ctx.tol());
        check = check.and(
            report.verdict == Verdict::Nonconcave,
            format!("{label}: {}", report.verdict.as_str()),
        );
        witnesses.push(witness_json(label, &m, &report));
    }
    Ok((check, witnesses))
}

fn two_by_two_oracle(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(3);
    let (mut r_err, mut d2_err): (f64, f64) = (0.0, 0.0);
    let mut formula_negative = true;
    for _ in 0..50 {
        let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..5.0f64).max(1e-3));
        let a = Matrix::from_rows(&[[p[0], p[1]], [p[2], p[3]]])?;
        let curve = closed_levinger_2x2(p[0], p[1], p[2], p[3])?;
        for t in hundred_and_one() {
            r_err = r_err.max((levinger_radius(&a, t)? - curve.r(t)).abs());
            if p[1] != p[2] && t > 0.0 && t < 1.0 {
                formula_negative &= curve.d2r(t) < 0.0;
            }
        }
        for t in tenths() {
            let d2 = second_derivative(&a, t, ctx.cfg.numerics.fd_step)?.value;
            d2_err = d2_err.max((d2 - curve.d2r(t)).abs());
        }
    }
    let check = Check::at_most("2x2 second derivative vs closed form", d2_err, tol::SECOND_DERIVATIVE)
        .and(r_err <= tol::CLOSED_FORM_R, format!("max |r - closed| {r_err:.3e} <= 1e-9"))
        .and(formula_negative, "closed-form r'' < 0 when b != c");
    Ok((check, vec![]))
}

fn tridiagonal(ctx: &Ctx) -> Outcome {
    let spec = FamilySpec::TridiagToeplitz { n: 8, a: 2.0, b: 1.0, c: 3.0 };
    let a = build(&spec)?;
    let mut err: f64 = 0.0;
    for t in hundred_and_one() {
        let p = (1.0 - t) * 2.0 + t * 3.0;
        let q = t * 2.0 + (1.0 - t) * 3.0;
        let want = 1.0 + 2.0 * (p * q).sqrt() * (PI / 9.0).cos();
        err = err.max((levinger_radius(&a, t)? - want).abs());
    }
    let s = ctx.values(&a)?;
    let report = certify_nonconcavity(&a, &s, ctx.tol());
    let sym = build(&FamilySpec::TridiagToeplitz { n: 8, a: 2.0, b: 1.0, c: 2.0 })?;
    let sym_report = certify_nonconcavity(&sym, &ctx.values(&sym)?, ctx.tol());
    let check = Check::at_most("tridiagonal Toeplitz r vs cosine formula", err, tol::TRIDIAG_R)
        .and(
            report.verdict == Verdict::ConcaveOnGrid,
            format!("verdict {}", report.verdict.as_str()),
        )
        .and(check_unimodality(&s, tol::UNIMODAL_SLACK), "unimodal")
        .and(
            sym_report.verdict == Verdict::Constant,
            format!("a = c verdict {}", sym_report.verdict.as_str()),
        );
    Ok((check, vec![]))
}

fn fiedler(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(5);
    let (mut spec_err, mut max_d2r, mut circ_range): (f64, f64, f64) =
        (0.0, f64::NEG_INFINITY, 0.0);
    let mut constant_ok = true;
    let mut circulant_ok = true;
    for n in [3, 5, 8] {
        let (u, v, w) = (
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.5..4.0),
        );
        let a = build(&FamilySpec::FiedlerToeplitz { n, u, v, w })?;
        spec_err = spec_err.max(full_spectrum(&a)?.max_distance(&fiedler_eigs(n, u, v, w)?));
        let s = ctx.with_derivatives(&a)?;
        max_d2r = s.d2r.iter().flatten().fold(max_d2r, |m, v| m.max(*v));

        let flat = build(&FamilySpec::FiedlerToeplitz { n, u, v: u, w })?;
        constant_ok &= certify_nonconcavity(&flat, &ctx.values(&flat)?, ctx.tol()).verdict
            == Verdict::Constant;

        let c = circulant_from_fiedler(n, u, v, w)?;
        circ_range = circ_range.max(ctx.values(&c)?.range());
        circulant_ok &= is_constant_levinger(&c, tol::CONSTANT_PREDICATE)?;
    }
    let check = Check::at_most("Fiedler spectrum vs formula", spec_err, tol::FIEDLER_SPECTRUM)
        .and(max_d2r <= tol::FIEDLER_D2R, format!("max sampled d2r {max_d2r:.3e} <= 1e-7"))
        .and(constant_ok, "u = v verdict constant")
        .and(
            circ_range <= tol::CIRCULANT_RANGE,
            format!("circulant range {circ_range:.3e} <= 1e-10"),
        )
        .and(circulant_ok, "circulant is_constant_levinger");
    Ok((check, vec![]))
}

fn weighted_shift_check(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(6);
    let weights: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..4.0)).collect();
    let a = weighted_shift(&weights)?;
    let ratios = tenths()
        .map(|t| Ok(levinger_radius(&a, t)? / (t * (1.0 - t)).sqrt()))
        .collect::<CoreResult<Vec<f64>>>()?;
    let spread = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ratios.iter().cloned().fold(f64::INFINITY, f64::min);

    let upper: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..4.0)).collect();
    let lower: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..4.0)).collect();
    let base = jacobi_charpoly(&upper, &lower, 1.0, 1.0)?.roots();
    let doubled = Spectrum::new(base.iter().map(|z| z * 2.0).collect());
    let four = Spectrum::new(jacobi_charpoly(&upper, &lower, 4.0, 1.0)?.roots());
    let root_err = four.max_distance(&doubled);

    let mut swap_err: f64 = 0.0;
    for mask in 0u32..32 {
        let swaps: Vec<bool> = (0..5).map(|i| mask >> i & 1 == 1).collect();
        let b = swapped_shift(&weights, &swaps)?;
        for t in hundred_and_one() {
            swap_err = swap_err.max((levinger_radius(&a, t)? - levinger_radius(&b, t)?).abs());
        }
    }
    let check = Check::at_most("weighted shift r/sqrt(t(1-t)) spread", spread, tol::SHIFT_RATIO)
        .and(root_err <= tol::ROOT_SCALING, format!("roots(4,1) vs 2 roots(1,1) {root_err:.3e}"))
        .and(swap_err <= tol::SWAP_R, format!("swap variants {swap_err:.3e}"));
    Ok((check, vec![]))
}

fn toeplitz_convex(ctx: &Ctx) -> Outcome {
    let a = toeplitz_4param();
    let h = ctx.cfg.numerics.fd_step;
    let left = second_derivative(&a, 0.01, h)?.value;
    let right = second_derivative(&a, 0.99, h)?.value;
    let mid = second_derivative(&a, 0.5, h)?.value;
    let report = certify_nonconcavity(&a, &ctx.values(&a)?, ctx.tol());
    let check = Check::above("4x4 Toeplitz r'' at t = 0.01 and 0.99", left.min(right), 0.0)
        .and(mid < 0.0, format!("r''(0.5) = {mid:.6} < 0"))
        .and(
            report.verdict == Verdict::Nonconcave,
            format!("verdict {}", report.verdict.as_str()),
        );
    Ok((check, vec![witness_json("toeplitz-4param", &a, &report)]))
}

fn cyclic_shift16(ctx: &Ctx) -> Outcome {
    let a = cyclic_weighted_shift(&reversible_cyclic_weights(16, 16.0)?)?;
    let h = ctx.cfg.numerics.fd_step;
    let early = second_derivative(&a, 0.05, h)?.value;
    let mid = second_derivative(&a, 0.5, h)?.value;
    let s = ctx.values(&a)?;
    let report = certify_nonconcavity(&a, &s, ctx.tol());
    let verified = match report.witness {
        Some(w) => {
            let tight = |t: f64| spectral_radius_with_tol(&levinger_homotopy(&a, t)?, tol::TIGHT_SOLVER);
            chord_margin_with(tight, w.t1, w.t2)? > ctx.tol()
        }
        None => false,
    };
    let check = Check::above("cyclic shift 16 r''(0.05)", early, 0.0)
        .and(mid < 0.0, format!("r''(0.5) = {mid:.4} < 0"))
        .and(
            report.verdict == Verdict::Nonconcave && verified,
            format!("verdict {}, witness re-verified", report.verdict.as_str()),
        )
        .and(
            check_unimodality(&s, tol::UNIMODAL_SLACK),
            format!("unimodal, violation {:.3e}", unimodality_violation(&s)),
        );
    Ok((check, vec![witness_json("cyclic-shift-16", &a, &report)]))
}

fn four_by_four(ctx: &Ctx) -> Outcome {
    let (a1, a2) = four_by_four_blocks(0.4)?;
    let cert = directsum_crossing(&a1, &a2, DEFAULT_SLOPE_TOL);
    let a = direct_sum(&a1, &a2)?;
    let report = certify_nonconcavity(&a, &ctx.values(&a)?, ctx.tol());
    let delta = cert.map_or(f64::NAN, |c| c.delta);
    let mut check = Check::above("4x4 direct sum at h = 0.4 crossing slope gap", delta, tol::CROSSING_DELTA)
        .and(
            report.verdict == Verdict::Nonconcave,
            format!("verdict {}", report.verdict.as_str()),
        );
    if let Some(c) = cert {
        check.note(format!("t* = {:.6}", c.t_star));
    }
    Ok((
        check,
        vec![json!({ "label": "four-by-four h=0.4", "crossing": cert }), witness_json("four-by-four h=0.4", &a, &report)],
    ))
}

fn random_irreducible(rng: &mut ChaCha8Rng, n: usize) -> CoreResult<Matrix> {
    loop {
        let a = Matrix::from_fn(n, |_, _| {
            if rng.gen_bool(0.3) {
                0.0
            } else {
                rng.gen_range(0.0..1.0)
            }
        })?;
        if is_irreducible(&a)? {
            return Ok(a);
        }
    }
}

/// Verdicts of the three constant-Levinger tests: Perron vector, block
/// structure, and sampled range.
fn constant_verdicts(ctx: &Ctx, a: &Matrix) -> CoreResult<[bool; 3]> {
    Ok([
        is_constant_levinger(a, tol::CONSTANT_PREDICATE)?,
        kqp_structure_check(a, tol::CONSTANT_PREDICATE)?,
        ctx.values(a)?.range() <= tol::SCAN_RANGE,
    ])
}

fn constant_agreement(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(10);
    let mut cases = Vec::new();
    for _ in 0..100 {
        let n = rng.gen_range(4..=8);
        cases.push(random_irreducible(&mut rng, n)?);
    }
    for k in 0..20 {
        let n = rng.gen_range(4..=8);
        if k % 2 == 0 {
            let b = Matrix::from_fn(n, |_, _| rng.gen_range(0.05..1.0))?;
            cases.push(decompose(&b).sym);
        } else {
            let row: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            cases.push(Matrix::from_fn(n, |i, j| row[(j + n - i) % n])?);
        }
    }
    let mut disagreements = 0;
    let mut constant = 0;
    for a in &cases {
        let v = constant_verdicts(ctx, a)?;
        if v[0] != v[1] || v[0] != v[2] {
            disagreements += 1;
        }
        constant += v[0] as usize;
    }
    let mut check = Check::at_most("constant-Levinger predicates disagree", disagreements as f64, 0.0)
        .and(constant == 20, format!("{constant} of 120 constant, 20 constructed"));
    check.note(format!("{} cases", cases.len()));
    Ok((check, vec![]))
}

fn skew_corollaries(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(11);
    let mut misses = 0;
    for k in 0..60 {
        let n = [3, 5, 7][k % 3];
        let a = Matrix::from_fn(n, |_, _| rng.gen_range(0.0..1.0))?;
        if !skew_singularity_check(&a).skew_rank_deficient {
            misses += 1;
        }
    }
    // All-ones plus two oriented pairs: the skew part is a direct sum of two
    // nonsingular 2×2 rotations.
    let mut rows = vec![vec![1.0; 4]; 4];
    rows[0][1] += 2.0;
    rows[2][3] += 1.0;
    let a = Matrix::from_rows(&rows)?;
    let skew = skew_singularity_check(&a);
    let constant = is_constant_levinger(&a, tol::CONSTANT_PREDICATE)?;
    let check = Check::at_most("odd-order skew parts missed as singular", misses as f64, 0.0)
        .and(
            !skew.n_odd && !skew.skew_rank_deficient,
            format!("4x4 skew part sigma_min {:.3e}", skew.smallest_singular_value),
        )
        .and(!constant, "4x4 verdict nonconstant");
    Ok((check, vec![]))
}

fn weight_limit(ctx: &Ctx) -> Outcome {
    let base = reversible_cyclic_weights(16, 16.0)?;
    let steps = weight_limit_experiment(
        &base,
        12,
        2f64.powi(-8),
        4,
        ctx.cfg.numerics.grid_size,
        ctx.cfg.numerics.fd_step,
    )?;
    let summary = WeightLimitSummary::from_steps(&steps).expect("at least two steps");
    let growth = summary.boundary_growth();
    let gaps = summary.mid_gaps();
    let check = Check::at_least("weight limit boundary |r''| growth", growth, tol::BOUNDARY_GROWTH)
        .and(
            summary.mid_converges(tol::MID_CONVERGENCE_NOISE),
            format!(
                "|r''(0.5) - limit| = [{}]",
                gaps.iter().map(|g| format!("{g:.2e}")).collect::<Vec<_>>().join(", ")
            ),
        );
    Ok((check, vec![json!({ "label": "weight-limit", "summary": summary })]))
}

type CriterionFn = fn(&Ctx) -> Outcome;

const CRITERIA: [(&str, CriterionFn); 12] = [
    ("ex1 spectrum", ex1_spectrum),
    ("ex1 nonconcavity witness", ex1_witness),
    ("2x2 closed form", two_by_two_oracle),
    ("tridiagonal Toeplitz", tridiagonal),
    ("Fiedler Toeplitz", fiedler),
    ("weighted shift", weighted_shift_check),
    ("4x4 Toeplitz convexity", toeplitz_convex),
    ("cyclic shift 16", cyclic_shift16),
    ("4x4 direct sum crossing", four_by_four),
    ("constant-Levinger agreement", constant_agreement),
    ("skew singularity", skew_corollaries),
    ("weight limit", weight_limit),
];

/// Runs the twelve acceptance criteria in order.
pub fn run_acceptance(cfg: &VerifyConfig) -> Vec<Criterion> {
    let ctx = Ctx { cfg: *cfg };
    CRITERIA
        .iter()
        .enumerate()
        .map(|(k, (name, f))| {
            let (mut check, witnesses) = match f(&ctx) {
                Ok(out) => out,
                Err(e) => (Check::failed(*name, f64::NAN, e.to_string()), vec![]),
            };
            check.name = format!("{:>2}. {}", k + 1, check.name);
            Criterion {
                id: k + 1,
                check,
                witnesses,
            }
        })
        .collect()
}

/// Checks that apply to any single matrix.
pub fn run_matrix_checks(input: &Input, cfg: &VerifyConfig) -> (Vec<Check>, Vec<Json>) {
    let ctx = Ctx { cfg: *cfg };
    let a = &input.matrix;
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    let label = |s: &str| format!("{}: {s}", input.label);

    match ctx.values(a) {
        Ok(s) => {
            let mut asym: f64 = 0.0;
            for (t, r) in s.t_grid.iter().zip(&s.r) {
                match levinger_radius(a, 1.0 - t) {
                    Ok(q) => asym = asym.max((q - r).abs()),
                    Err(_) => asym = f64::NAN,
                }
            }
            let scale = 1.0 + s.r.iter().cloned().fold(0.0, f64::max);
            checks.push(Check::at_most(
                label("r(t) - r(1-t)"),
                asym,
                tol::TRANSPOSE_SYMMETRY * scale,
            ));
            if a.is_nonnegative() {
                checks.push(Check::at_most(
                    label("unimodality violation"),
                    unimodality_violation(&s),
                    tol::UNIMODAL_SLACK,
                ));
            }
            let report = certify_nonconcavity(a, &s, ctx.tol());
            let mut verdict = Check::at_most(label("concavity verdict"), 0.0, 0.0);
            verdict.note(report.verdict.as_str());
            if let Some(w) = report.witness {
                let tight =
                    |t: f64| spectral_radius_with_tol(&levinger_homotopy(a, t)?, tol::TIGHT_SOLVER);
                let margin = chord_margin_with(tight, w.t1, w.t2).unwrap_or(f64::NAN);
                verdict = Check::above(label("witness margin"), margin, ctx.tol() / 2.0);
                verdict.note(format!("t1 = {}, t2 = {}", w.t1, w.t2));
            }
            checks.push(verdict);
            witnesses.push(witness_json(&input.label, a, &report));

            if a.is_nonnegative() && is_irreducible(a).unwrap_or(false) {
                let v = [
                    is_constant_levinger(a, tol::CONSTANT_PREDICATE),
                    kqp_structure_check(a, tol::CONSTANT_PREDICATE),
                ];
                match v {
                    [Ok(x), Ok(y)] => {
                        let z = s.range() <= tol::SCAN_RANGE;
                        let mut c = Check::at_most(
                            label("constant-Levinger predicates disagree"),
                            ((x != y) || (x != z)) as u8 as f64,
                            0.0,
                        );
                        c.note(if x { "constant" } else { "nonconstant" });
                        checks.push(c);
                    }
                    [Err(e), _] | [_, Err(e)] => {
                        checks.push(Check::failed(label("constant-Levinger predicates"), 0.0, e.to_string()))
                    }
                }
            }
        }
        Err(e) => checks.push(Check::failed(label("scan"), 0.0, e.to_string())),
    }

    if let Some(Ok(Some(curve))) = input.spec.as_ref().map(FamilySpec::closed_form) {
        let mut err: f64 = 0.0;
        for t in hundred_and_one().filter(|t| *t > 0.0 && *t < 1.0) {
            err = err.max(levinger_radius(a, t).map_or(f64::NAN, |r| (r - curve.r(t)).abs()));
        }
        checks.push(Check::at_most(label("r vs closed form"), err, tol::CLOSED_FORM_R));
    }

    let skew = skew_singularity_check(a);
    if skew.n_odd {
        checks.push(Check::at_most(
            label("odd-order skew part smallest singular value"),
            skew.smallest_singular_value,
            levinger_core::analysis::SKEW_SINGULAR_TOL * skew.skew_norm,
        ));
    }
    (checks, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use levinger_core::families::ex1;

    fn input(spec: FamilySpec) -> Input {
        Input {
            label: spec.kind().into(),
            matrix: build(&spec).unwrap(),
            spec: Some(spec),
        }
    }

    fn coarse() -> VerifyConfig {
        VerifyConfig {
            numerics: Numerics {
                grid_size: 101,
                ..Numerics::default()
            },
            seed: DEFAULT_SEED,
        }
    }

    #[test]
    fn ex1_matrix_checks_pass() {
        let (checks, witnesses) = run_matrix_checks(&input(FamilySpec::Ex1Example), &coarse());
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert!(checks.iter().any(|c| c.name.contains("witness margin")));
        assert!(checks.iter().any(|c| c.name.contains("skew")));
        assert_eq!(witnesses[0]["verdict"], "nonconcave");
        assert_eq!(ex1().dim(), 3);
    }

    #[test]
    fn closed_form_check_runs_for_two_by_two() {
        let spec = FamilySpec::TwoByTwo { a: 1.0, b: 4.0, c: 0.5, d: 2.0 };
        let (checks, _) = run_matrix_checks(&input(spec), &coarse());
        let closed = checks.iter().find(|c| c.name.contains("closed form")).unwrap();
        assert!(closed.pass && closed.measured < 1e-12);
    }

    #[test]
    fn value_criteria_ignore_the_step() {
        let ctx = Ctx {
            cfg: VerifyConfig {
                numerics: Numerics {
                    fd_step: 0.3,
                    ..coarse().numerics
                },
                ..coarse()
            },
        };
        assert!(ex1_spectrum(&ctx).unwrap().0.pass);
        assert!(two_by_two_oracle(&ctx).is_err() || !two_by_two_oracle(&ctx).unwrap().0.pass);
    }
}
