//! File formats, verification suites and the command-line front end for
//! [`tlsym_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod report;
pub mod sample;
pub mod suites;

pub use config::{DeltaMode, OutputFormat, RunConfig};
pub use error::{AppError, Result};
pub use report::{Check, Report};
