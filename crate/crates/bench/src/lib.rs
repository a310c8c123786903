//! Seeded benchmark suites for the `batsonar` optimizers: configuration, epoch
//! scheduling, CSV/JSON reports and side-by-side comparisons.

pub mod compare;
pub mod config;
mod error;
pub mod report;
pub mod suite;

pub use compare::{compare, Comparison, ComparisonRow};
pub use config::{Algorithm, AngleSpec, Format, Overrides, SuiteConfig};
pub use error::{BenchError, ConfigError};
pub use report::{emit_report, trajectory_path};
pub use suite::{run_suite, run_suite_with, EpochRecord, Schedule, SuiteReport};
