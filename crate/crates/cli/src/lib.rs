//! Command-line front end: optimizations, sweeps, crossovers, profile curves
//! and plots, with an on-disk cache of optimized points.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod table;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
