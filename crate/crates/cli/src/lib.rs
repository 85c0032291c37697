//! Command-line front end: job configuration and subcommand dispatch.

pub mod config;
pub mod run;

pub use config::{Command, ConfigError, DatumSpec, JobConfig};
pub use run::{run, Failure, Outcome};
