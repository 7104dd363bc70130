//! File formats, statistics and subcommands behind the `spanner` binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod svg;

pub use error::CliError;
