//! Config parsing and artifact writing for the `tsqml` command.

pub mod config;
mod error;
pub mod runner;

pub use config::{parse_config, ExperimentConfig, ExperimentKind};
pub use error::{CliError, ConfigError};
pub use runner::{output_dir, run};
