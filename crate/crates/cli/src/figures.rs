//! Data behind each figure, one table per figure id.

use levinger_core::analysis::{
    certify_nonconcavity, scan_grid, second_derivative, uniform_grid, weight_limit_experiment,
};
use levinger_core::families::{
    cyclic_weighted_shift, ex1, four_by_four_blocks, reversible_cyclic_weights, toeplitz_4param,
};
use levinger_core::matrix::{direct_sum, levinger_homotopy};
use levinger_core::spectra::full_spectrum;

use crate::args::Numerics;
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

/// Number of `h` values in figure 2, spaced `1/20` apart on [0, 1].
const FIG2_H_STEPS: usize = 20;
/// The `h` slice flagged in figure 2.
const FIG2_FLAGGED_H: f64 = 0.4;

pub fn figure(id: u8, numerics: &Numerics) -> Result<Table> {
    match id {
        1 => figure_1(numerics),
        2 => figure_2(numerics),
        3 => figure_3(numerics),
        4 => figure_4(numerics),
        5 | 6 => figure_weight_limit(id == 6, numerics),
        _ => Err(CliError::Usage(format!("unknown figure {id}, expected 1 to 6"))),
    }
}

/// Real eigenvalue curves of the three-by-three example, descending.
fn figure_1(numerics: &Numerics) -> Result<Table> {
    let a = ex1();
    let mut table = Table::new(["t", "r", "eig_1", "eig_2", "eig_3"]);
    for t in uniform_grid(numerics.grid_size) {
        let spectrum = full_spectrum(&levinger_homotopy(&a, t)?)?;
        let mut eig: Vec<f64> = spectrum.values().iter().map(|z| z.re).collect();
        eig.sort_by(|x, y| y.total_cmp(x));
        let mut row = vec![Cell::Real(t), Cell::Real(spectrum.spectral_radius())];
        row.extend(eig.into_iter().map(Cell::Real));
        table.push(row);
    }
    Ok(table)
}

/// Eigenvalues of the two-block homotopy over a `(t, h)` grid.
fn figure_2(numerics: &Numerics) -> Result<Table> {
    let mut header = vec!["h".to_string(), "t".into(), "r".into()];
    header.extend((1..=4).map(|k| format!("eig_re_{k}")));
    header.extend((1..=4).map(|k| format!("eig_im_{k}")));
    header.extend(["h_slice".into(), "nonconcave".into()]);
    let mut table = Table::new(header);
    let grid = uniform_grid(numerics.grid_size);
    for k in 0..=FIG2_H_STEPS {
        let h = k as f64 / FIG2_H_STEPS as f64;
        let (a1, a2) = four_by_four_blocks(h)?;
        let a = direct_sum(&a1, &a2)?;
        let scan = scan_grid(&a, &grid, None)?;
        let nonconcave = certify_nonconcavity(&a, &scan, numerics.tol).verdict
            == levinger_core::analysis::Verdict::Nonconcave;
        let flagged = (h - FIG2_FLAGGED_H).abs() < 1e-12;
        for (&t, &r) in grid.iter().zip(&scan.r) {
            let spectrum = full_spectrum(&levinger_homotopy(&a, t)?)?;
            let mut row = vec![Cell::Real(h), Cell::Real(t), Cell::Real(r)];
            row.extend(spectrum.values().iter().map(|z| Cell::Real(z.re)));
            row.extend(spectrum.values().iter().map(|z| Cell::Real(z.im)));
            row.extend([Cell::flag(flagged), Cell::flag(nonconcave)]);
            table.push(row);
        }
    }
    Ok(table)
}

/// Second derivative of the 4×4 Toeplitz example, endpoints included.
fn figure_3(numerics: &Numerics) -> Result<Table> {
    let a = toeplitz_4param();
    let mut table = Table::new(["t", "d2r", "stencil"]);
    for t in uniform_grid(numerics.grid_size) {
        let d = second_derivative(&a, t, numerics.fd_step)?;
        table.push(vec![
            Cell::Real(t),
            Cell::Real(d.value),
            Cell::Text(d.stencil.as_str().into()),
        ]);
    }
    Ok(table)
}

fn cyclic_shift16() -> Result<levinger_core::Matrix> {
    Ok(cyclic_weighted_shift(&reversible_cyclic_weights(16, 16.0)?)?)
}

/// Levinger function of the reversible cyclic shift with sixteen weights.
fn figure_4(numerics: &Numerics) -> Result<Table> {
    let a = cyclic_shift16()?;
    let scan = scan_grid(&a, &uniform_grid(numerics.grid_size), Some(numerics.fd_step))?;
    let mut table = Table::new(["t", "r", "d2r"]);
    for k in 0..scan.len() {
        table.push(vec![
            Cell::Real(scan.t_grid[k]),
            Cell::Real(scan.r[k]),
            Cell::opt(scan.d2r[k]),
        ]);
    }
    Ok(table)
}

/// `r` (figure 5) or `d2r` (figure 6) as the twelfth weight shrinks by
/// factors of `2^-8`, ending with the zero-weight limit.
fn figure_weight_limit(second: bool, numerics: &Numerics) -> Result<Table> {
    let base = reversible_cyclic_weights(16, 16.0)?;
    let steps = weight_limit_experiment(
        &base,
        12,
        2f64.powi(-8),
        4,
        numerics.grid_size,
        numerics.fd_step,
    )?;
    let value = if second { "d2r" } else { "r" };
    let mut table = Table::new(["scale", "weight", "t", value]);
    for step in &steps {
        let s = &step.scan;
        for k in 0..s.len() {
            let y = if second { Cell::opt(s.d2r[k]) } else { Cell::Real(s.r[k]) };
            table.push(vec![
                Cell::Real(step.scale),
                Cell::Real(step.weight),
                Cell::Real(s.t_grid[k]),
                y,
            ]);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Numerics {
        Numerics {
            grid_size: 11,
            ..Numerics::default()
        }
    }

    #[test]
    fn unknown_id_is_a_usage_error() {
        assert!(matches!(figure(0, &small()), Err(CliError::Usage(_))));
        assert!(matches!(figure(7, &small()), Err(CliError::Usage(_))));
    }

    #[test]
    fn shapes() {
        let t = figure(1, &small()).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert_eq!(t.header.len(), 5);
        let t = figure(2, &small()).unwrap();
        assert_eq!(t.rows.len(), 11 * (FIG2_H_STEPS + 1));
        assert_eq!(t.header.len(), 13);
        let t = figure(5, &small()).unwrap();
        assert_eq!(t.rows.len(), 11 * 6);
    }

    #[test]
    fn ex1_curves_are_sorted() {
        let t = figure(1, &small()).unwrap();
        for row in &t.rows {
            let e: Vec<f64> = row[2..].iter().map(|c| c.as_real().unwrap()).collect();
            assert!(e[0] >= e[1] && e[1] >= e[2]);
        }
    }
}
