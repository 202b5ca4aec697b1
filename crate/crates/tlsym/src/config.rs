use std::fmt;
use std::str::FromStr;

use crate::error::{AppError, Result};

/// Largest `--max-degree` accepted; the enumerations grow like Catalan
/// numbers squared.
pub const MAX_DEGREE_GUARD: usize = 5;

#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub enum DeltaMode {
    #[default]
    Symbolic,
    Numeric(f64),
}

impl FromStr for DeltaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(DeltaMode::Symbolic);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(DeltaMode::Numeric(v)),
            _ => Err(format!("expected `symbolic` or a positive number, got `{s}`")),
        }
    }
}

impl fmt::Display for DeltaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaMode::Symbolic => write!(f, "symbolic"),
            DeltaMode::Numeric(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, PartialEq, Debug)]
pub struct RunConfig {
    pub delta: DeltaMode,
    pub max_degree: usize,
    pub max_boundary: usize,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { delta: DeltaMode::Symbolic, max_degree: 3, max_boundary: 10, format: OutputFormat::Text, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_degree > MAX_DEGREE_GUARD {
            return Err(AppError::Usage(format!(
                "--max-degree {} exceeds the limit of {MAX_DEGREE_GUARD}",
                self.max_degree
            )));
        }
        if self.max_boundary > 12 {
            return Err(AppError::Usage(format!("--max-boundary {} exceeds the limit of 12", self.max_boundary)));
        }
        Ok(())
    }

    /// The numeric modulus, for commands that need one.
    pub fn numeric_delta(&self) -> Option<f64> {
        match self.delta {
            DeltaMode::Symbolic => None,
            DeltaMode::Numeric(v) => Some(v),
        }
    }
}
