//! Command-line front end: matrix files, built-in fixtures, reports and the
//! reproduction harness.

pub mod app;
pub mod fixtures;
pub mod io;
pub mod report;
pub mod repro;
