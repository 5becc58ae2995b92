//! Command-line front end for `ngap-core`.
//!
//! Objects are read from and written to the `.dvo` text format ([`dvo`]);
//! reports are plain text or JSON ([`report`]). The binary is a thin wrapper
//! over [`commands::run`].

pub mod commands;
pub mod dvo;
pub mod report;

pub use commands::{run, Cli, CliError, Command};
pub use report::Report;
