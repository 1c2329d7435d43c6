//! Experiment orchestration: configurations, presets, the command line and CSV output.

pub mod cli;
mod config;
mod error;
pub mod experiment;
pub mod output;
pub mod presets;

pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use experiment::{run_cell, run_experiment, CellResult};
pub use output::{read_rows, write_rows, ResultRow, Status};
