//! The twelve acceptance criteria, one pass/fail line each. Thresholds live
//! in `levinger_cli::verify::tol`. Runs without the libtest harness so the
//! lines are printed even when everything passes.

use std::process::ExitCode;

use levinger_cli::verify::{run_acceptance, VerifyConfig};

fn main() -> ExitCode {
    let criteria = run_acceptance(&VerifyConfig::default());
    assert_eq!(criteria.len(), 12);
    for c in &criteria {
        println!("{}", c.check);
    }
    let failed: Vec<usize> = criteria.iter().filter(|c| !c.check.pass).map(|c| c.id).collect();
    println!("{}/12 acceptance criteria passed", 12 - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
