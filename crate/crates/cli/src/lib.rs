//! Command-line front end for the Levinger toolkit: scans, figure data,
//! verification, and random counterexample search.

pub mod args;
pub mod error;
pub mod figures;
pub mod report;
pub mod run;
pub mod search;
pub mod source;
pub mod table;
pub mod verify;
