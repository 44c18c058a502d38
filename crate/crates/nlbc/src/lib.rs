//! Batch front end for `nlbc-core`: JSON configuration, task dispatch and
//! CSV/JSON artifacts.

pub mod config;
pub mod data;
pub mod error;
pub mod output;
pub mod scan;
pub mod tasks;
pub mod verify;

pub use config::RunConfig;
pub use error::CliError;
pub use tasks::{run, Outcome, RunOptions};
