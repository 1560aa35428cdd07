//! Driver layer for the regular-orbit engine: job specifications, configuration,
//! the verdict cache, embedded expected results and the commands behind `regorb`.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod job;
pub mod tables;

pub use error::{CliError, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
