//! Command dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use levinger_core::analysis::{
    constant_levinger_residual, levinger_radius, scan_grid, skew_singularity_check, uniform_grid,
};
use levinger_core::matrix::{decompose, levinger_homotopy, nonneg_extension_bound};
use levinger_core::spectra::full_spectrum;
use serde_json::json;

use crate::args::{Cli, Command, Format, Numerics, SourceArgs};
use crate::error::{exit, CliError, Result};
use crate::figures::figure;
use crate::report::Report;
use crate::search::search;
use crate::source::{resolve, Input};
use crate::table::{Cell, Table};
use crate::verify::{run_acceptance, run_matrix_checks, VerifyConfig};

/// What a command produced.
pub enum Output {
    Table(Table),
    Report(Report),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) if !r.passed() => exit::VERIFY_FAILED,
            _ => exit::SUCCESS,
        }
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match (self, format) {
            (Output::Table(t), Format::Csv) => t.write_csv(out)?,
            (Output::Table(t), Format::Json) => {
                serde_json::to_writer_pretty(&mut out, &t.to_json())?;
                writeln!(out)?;
            }
            (Output::Report(r), Format::Csv) => write!(out, "{r}")?,
            (Output::Report(r), Format::Json) => {
                serde_json::to_writer_pretty(&mut out, r)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn check_numerics(n: &Numerics) -> Result<()> {
    if n.grid_size < 3 {
        return Err(CliError::Usage(format!("grid {} must be at least 3", n.grid_size)));
    }
    if !(n.fd_step > 0.0 && n.fd_step.is_finite()) {
        return Err(CliError::Usage(format!("fd-step {} must be positive", n.fd_step)));
    }
    if !(n.tol >= 0.0 && n.tol.is_finite()) {
        return Err(CliError::Usage(format!("tol {} must be nonnegative", n.tol)));
    }
    Ok(())
}

/// Leading `source` column, present only when several inputs share a table.
fn with_source(inputs: &[Input], header: Vec<String>) -> Table {
    let mut full = Vec::new();
    if inputs.len() > 1 {
        full.push("source".to_string());
    }
    full.extend(header);
    Table::new(full)
}

fn push(table: &mut Table, inputs: &[Input], input: &Input, mut row: Vec<Cell>) {
    if inputs.len() > 1 {
        row.insert(0, Cell::Text(input.label.clone()));
    }
    table.push(row);
}

fn eig_header(n: usize) -> Vec<String> {
    (1..=n)
        .map(|k| format!("eig_re_{k}"))
        .chain((1..=n).map(|k| format!("eig_im_{k}")))
        .collect()
}

fn eig_cells(input: &Input, t: f64) -> Result<Vec<Cell>> {
    let s = full_spectrum(&levinger_homotopy(&input.matrix, t)?)?;
    Ok(s.values()
        .iter()
        .map(|z| Cell::Real(z.re))
        .chain(s.values().iter().map(|z| Cell::Real(z.im)))
        .collect())
}

fn same_dimension(inputs: &[Input]) -> Result<usize> {
    let n = inputs[0].matrix.dim();
    if inputs.iter().any(|i| i.matrix.dim() != n) {
        return Err(CliError::Usage(
            "all matrices in one table must share a dimension".into(),
        ));
    }
    Ok(n)
}

fn eval(source: &SourceArgs, t: f64) -> Result<Table> {
    if !(0.0..=1.0).contains(&t) {
        return Err(CliError::Usage(format!("t = {t} must lie in [0, 1]")));
    }
    let inputs = resolve(source)?;
    let n = same_dimension(&inputs)?;
    let mut header = vec!["t".to_string(), "r".into()];
    header.extend(eig_header(n));
    let mut table = with_source(&inputs, header);
    for input in &inputs {
        let mut row = vec![Cell::Real(t), Cell::Real(levinger_radius(&input.matrix, t)?)];
        row.extend(eig_cells(input, t)?);
        push(&mut table, &inputs, input, row);
    }
    Ok(table)
}

fn scan(source: &SourceArgs, numerics: &Numerics) -> Result<Table> {
    check_numerics(numerics)?;
    let inputs = resolve(source)?;
    let n = same_dimension(&inputs)?;
    let mut header = vec!["t".to_string(), "r".into(), "dr".into(), "d2r".into()];
    header.extend(eig_header(n));
    let mut table = with_source(&inputs, header);
    let grid = uniform_grid(numerics.grid_size);
    for input in &inputs {
        let s = scan_grid(&input.matrix, &grid, Some(numerics.fd_step))?;
        if let Some(f) = s.failures.first() {
            eprintln!("{}: t = {}: {}", input.label, f.t, f.message);
            return Err(levinger_core::Error::NoConvergence("scan").into());
        }
        for k in 0..s.len() {
            let mut row = vec![
                Cell::Real(s.t_grid[k]),
                Cell::Real(s.r[k]),
                Cell::opt(s.dr[k]),
                Cell::opt(s.d2r[k]),
            ];
            row.extend(eig_cells(input, s.t_grid[k])?);
            push(&mut table, &inputs, input, row);
        }
    }
    Ok(table)
}

/// Long format: one row per entry of the symmetric and skew parts, then one
/// row per derived scalar.
fn decompose_table(source: &SourceArgs) -> Result<Table> {
    let inputs = resolve(source)?;
    let header = ["quantity", "row", "col", "value"].map(String::from).to_vec();
    let mut table = with_source(&inputs, header);
    for input in &inputs {
        let a = &input.matrix;
        let parts = decompose(a);
        for (name, m) in [("sym", &parts.sym), ("skew", &parts.skew)] {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let row = vec![
                        Cell::Text(name.into()),
                        Cell::Int(i as i64 + 1),
                        Cell::Int(j as i64 + 1),
                        Cell::Real(m.get(i, j)),
                    ];
                    push(&mut table, &inputs, input, row);
                }
            }
        }
        let skew = skew_singularity_check(a);
        let mut scalars = vec![
            ("skew_norm", skew.skew_norm),
            ("skew_sigma_min", skew.smallest_singular_value),
        ];
        if let Ok(bound) = nonneg_extension_bound(a) {
            scalars.push(("extension_bound", bound.value()));
        }
        if let Ok(res) = constant_levinger_residual(a) {
            scalars.push(("constant_residual", res));
        }
        for (name, value) in scalars {
            let row = vec![Cell::Text(name.into()), Cell::Empty, Cell::Empty, Cell::Real(value)];
            push(&mut table, &inputs, input, row);
        }
    }
    Ok(table)
}

fn verify(source: &SourceArgs, cfg: VerifyConfig) -> Result<Report> {
    check_numerics(&cfg.numerics)?;
    let config = serde_json::to_value(cfg)?;
    if source.is_empty() {
        let criteria = run_acceptance(&cfg);
        let witnesses = criteria.iter().flat_map(|c| c.witnesses.clone()).collect();
        return Ok(Report {
            command: "verify".into(),
            config,
            checks: criteria.into_iter().map(|c| c.check).collect(),
            witnesses,
        });
    }
    let mut report = Report {
        command: "verify".into(),
        config: json!({ "numerics": config, "source": source }),
        checks: Vec::new(),
        witnesses: Vec::new(),
    };
    for input in resolve(source)? {
        let (checks, witnesses) = run_matrix_checks(&input, &cfg);
        report.checks.extend(checks);
        report.witnesses.extend(witnesses);
    }
    Ok(report)
}

/// Runs one parsed command.
pub fn execute(command: &Command) -> Result<Output> {
    Ok(match command {
        Command::Eval { source, t } => Output::Table(eval(source, *t)?),
        Command::Scan { source, numerics } => Output::Table(scan(source, numerics)?),
        Command::Verify {
            source,
            numerics,
            seed,
        } => Output::Report(verify(
            source,
            VerifyConfig {
                numerics: *numerics,
                seed: *seed,
            },
        )?),
        Command::Figure { id, numerics } => {
            check_numerics(numerics)?;
            Output::Table(figure(*id, numerics)?)
        }
        Command::Search(args) => Output::Table(search(args)?),
        Command::Decompose { source } => Output::Table(decompose_table(source)?),
    })
}

/// Executes and writes the result; returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let output = execute(&cli.command)?;
    match cli.out.as_ref().filter(|p| p.as_os_str() != "-") {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::File {
                path: path.display().to_string(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            output.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(output.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerics_ranges() {
        let ok = Numerics::default();
        assert!(check_numerics(&ok).is_ok());
        for bad in [
            Numerics { grid_size: 2, ..ok },
            Numerics { fd_step: 0.0, ..ok },
            Numerics { fd_step: f64::NAN, ..ok },
            Numerics { tol: -1.0, ..ok },
        ] {
            assert!(matches!(check_numerics(&bad), Err(CliError::Usage(_))));
        }
    }

    #[test]
    fn failed_reports_exit_one() {
        let report = |pass| Report {
            command: "verify".into(),
            config: json!({}),
            checks: vec![crate::report::Check::at_most("x", if pass { 0.0 } else { 1.0 }, 0.5)],
            witnesses: vec![],
        };
        assert_eq!(Output::Report(report(true)).exit_code(), exit::SUCCESS);
        assert_eq!(Output::Report(report(false)).exit_code(), exit::VERIFY_FAILED);
    }
}
