//! Std companion to `sunbose-core`: JSON formats, parallel Monte Carlo and the
//! verification commands behind the `sunbose` binary.

pub mod commands;
pub mod config;
pub mod formats;
pub mod mc;
pub mod report;

pub use config::{ConfigError, RunConfig};
pub use report::{Check, Report};
pub use sunbose_core as core;
