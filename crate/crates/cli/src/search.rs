//! Seeded random search for matrices whose Levinger function is not concave.
//!
//! Draws come from ChaCha8 seeded through `seed_from_u64`, so a seed names
//! the same record stream on every platform.

use levinger_core::analysis::{
    certify_nonconcavity, chord_margin_with, scan_grid, uniform_grid, Verdict,
};
use levinger_core::families::{build, FamilySpec};
use levinger_core::matrix::levinger_homotopy;
use levinger_core::spectra::spectral_radius_with_tol;
use levinger_core::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{DrawMode, SearchArgs};
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};
use crate::verify::tol::TIGHT_SOLVER;

pub const HEADER: [&str; 7] = ["draw", "n", "matrix", "t1", "t2", "margin", "verified_margin"];

/// Rows joined by `;`, entries by spaces, each printed to 17 digits.
pub fn matrix_cell(a: &Matrix) -> String {
    a.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| crate::table::format_real(*x))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Inverse of [`matrix_cell`].
pub fn parse_matrix_cell(text: &str) -> Result<Matrix> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad matrix cell: {e}")))?;
    Ok(Matrix::from_rows(&rows)?)
}

fn draw(rng: &mut ChaCha8Rng, args: &SearchArgs) -> Result<Matrix> {
    match args.mode {
        DrawMode::Dense => Ok(Matrix::from_fn(args.n, |_, _| {
            let x: f64 = rng.gen();
            if rng.gen_bool(args.sparsity) {
                0.0
            } else {
                x
            }
        })?),
        DrawMode::TridiagToeplitz => {
            let (a, b, c) = (rng.gen(), rng.gen(), rng.gen());
            Ok(build(&FamilySpec::TridiagToeplitz { n: args.n, a, b, c })?)
        }
    }
}

/// Margin of the chord test recomputed with a tenfold tighter solver.
pub fn verified_margin(a: &Matrix, t1: f64, t2: f64) -> Result<f64> {
    let r = |t: f64| spectral_radius_with_tol(&levinger_homotopy(a, t)?, TIGHT_SOLVER);
    Ok(chord_margin_with(r, t1, t2)?)
}

pub fn search(args: &SearchArgs) -> Result<Table> {
    if !(0.0..=1.0).contains(&args.sparsity) {
        return Err(CliError::Usage(format!(
            "sparsity {} must lie in [0, 1]",
            args.sparsity
        )));
    }
    if args.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    if args.grid_size < 3 {
        return Err(CliError::Usage("grid must have at least 3 points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let grid = uniform_grid(args.grid_size);
    let mut table = Table::new(HEADER);
    for k in 0..args.draws {
        let a = draw(&mut rng, args)?;
        let scan = scan_grid(&a, &grid, None)?;
        let report = certify_nonconcavity(&a, &scan, args.tol);
        if report.verdict != Verdict::Nonconcave {
            continue;
        }
        let Some(w) = report.witness else { continue };
        table.push(vec![
            Cell::Int(k as i64),
            Cell::Int(args.n as i64),
            Cell::Text(matrix_cell(&a)),
            Cell::Real(w.t1),
            Cell::Real(w.t2),
            Cell::Real(w.margin),
            Cell::Real(verified_margin(&a, w.t1, w.t2)?),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_cell_round_trips() {
        let a = Matrix::from_rows(&[[0.1, 0.0], [1.0 / 3.0, 2.5]]).unwrap();
        assert_eq!(parse_matrix_cell(&matrix_cell(&a)).unwrap(), a);
    }
}
