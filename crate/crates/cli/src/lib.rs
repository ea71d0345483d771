//! Command-line front end: turns arguments into a [`RunConfig`], runs the
//! propagation or partition sweep and emits CSV.

pub mod args;
pub mod config;
pub mod custom;
pub mod error;
pub mod format;
pub mod run;

pub use args::Cli;
pub use config::{Job, ModelChoice, OutputMethod, PartitionJob, PropagateJob, RunConfig};
pub use custom::{load_custom_hamiltonian, parse_custom_hamiltonian};
pub use error::{CliError, Result};
pub use run::{execute, render, run_partition, run_propagate};
