//! File formats, synthetic datasets and the command-line pipeline around
//! `simplex-embed-core`.

pub mod artifacts;
pub mod commands;
pub mod complex_file;
pub mod config;
pub mod dataset;
pub mod error;
pub mod generate;
pub mod matrix_file;
pub mod pipeline;

pub use error::{CliError, Result};
