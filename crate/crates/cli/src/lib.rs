//! Command-line companion to `phasegate-core`: config files, named
//! experiments, two-axis parameter sweeps, figure presets and deterministic
//! CSV/report output.
//!
//! The library layer exists so integration tests (and other tooling) can
//! drive sweeps and experiments in-process; the `phasegate` binary is a
//! thin wrapper around [`cli::run`].

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod figures;
pub mod output;
pub mod sweep;

pub use cli::run;
pub use error::{CliError, Result};
