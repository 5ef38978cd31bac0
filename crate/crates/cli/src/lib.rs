//! Tables, verification suites and exact machine-readable output on top of
//! `lgcy-core`, plus an on-disk cache for computed coefficients.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod record;
pub mod suites;

pub use config::{Format, RunConfig};
pub use error::CliError;

/// Version of the JSON layout written by this crate, both for command
/// output and for cache files.
pub const SCHEMA_VERSION: u32 = 1;
