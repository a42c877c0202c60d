//! Definition documents, the built-in catalog, check dispatch and table export.

pub mod catalog;
pub mod checks;
pub mod export;
pub mod format;

pub use catalog::{catalog, catalog_entry, catalog_names};
pub use checks::{all_passed, parse_selection, render_json, render_text, run_checks, CheckOptions, CheckReport, Status, CHECK_NAMES};
pub use export::{export_table, Table};
pub use format::{parse_definition, Definition, Instance};
