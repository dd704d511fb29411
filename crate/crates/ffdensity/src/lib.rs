//! Command-line front end for `ffdensity-core`: text formats, JSON output,
//! experiment files and a threaded runner for the density harness.

pub mod cli;
pub mod config;
pub mod json;
pub mod parallel;
pub mod text;
