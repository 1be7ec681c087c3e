//! Built-in example equations, the checks run against them and the JSON report.
mod checks;
mod entries;
pub mod ree;
mod report;

pub use checks::{ree_report, run_checks, run_entry, CheckConfig, Stages};
pub use entries::{catalog, find_entry, CatalogEntry, ExpectedFlags, RSign};
pub use report::{format_residual, CheckRecord, InputEcho, Report, Status, Summary, SCHEMA_VERSION};
