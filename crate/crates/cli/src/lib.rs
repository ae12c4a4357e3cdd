//! Command-line front end: file parsing, commands and reports.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{run, Cli, CliError, Outcome};
