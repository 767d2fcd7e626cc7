//! Sweep runner for the `latbound` bounds and simulators: configuration,
//! evaluation over an SNR grid, and result files.

pub mod config;
pub mod exec;
pub mod genfile;
pub mod output;
pub mod sweep;

use std::path::Path;

use serde_json::json;

pub use config::{load_sweeps, ConfigFile, Overrides, SweepConfig};
pub use sweep::{run_sweep, SweepResult};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed data: {0}")]
    Format(String),
    #[error(transparent)]
    Eval(#[from] latbound::Error),
}

impl CliError {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        CliError::Config { field: field.to_string(), message: message.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    pub fn csv(e: csv::Error) -> Self {
        CliError::Format(e.to_string())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "config",
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
            CliError::Eval(_) => "evaluation",
        }
    }

    /// One-line JSON record for scripts.
    pub fn record(&self) -> String {
        let mut v = json!({ "error": { "kind": self.kind(), "message": self.to_string() } });
        if let CliError::Config { field, .. } = self {
            v["error"]["field"] = json!(field);
        }
        v.to_string()
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            _ => 1,
        }
    }
}
