//! Command-line front end: scenario files, audits and the fixture library.

pub mod audit;
pub mod cli;
pub mod commands;
pub mod fixtures;
pub mod format;

pub use cli::Cli;
pub use commands::{execute, CliError};
