//! Verification suites, graph export and the curve tool behind the
//! `curvekit` binary.

pub mod config;
pub mod curve_tool;
pub mod export;
pub mod report;
pub mod suites;

pub use config::{Config, Overrides};
pub use report::{Check, Status, SuiteReport};
pub use suites::{run_suite, Suite};
