//! Command-line layer over `equideg`: output formats, reference tables and
//! the table-regeneration checks.

pub mod commands;
pub mod error;
pub mod golden;
pub mod output;

pub use error::{CliError, CliResult};
