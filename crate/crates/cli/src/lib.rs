//! Command-line front end: CSV, JSON and SVG output for arctic curves,
//! edge-inclusion probabilities and exact samples, plus the verification
//! suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod svg;
pub mod tolerances;
pub mod verify;

pub use error::{CliError, Result};
