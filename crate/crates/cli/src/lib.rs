//! Command-line front end for `regge-core` and the acceptance battery behind
//! `regge suite`.

pub mod commands;
pub mod report;
pub mod suite;

pub use commands::{run, Cli, Outcome};
