use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),

    #[error("numerical failure: all {points} grid points failed (first: {first})")]
    AllPointsFailed { points: usize, first: String },

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::AllPointsFailed { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }
}

/// Configuration problem, with the offending line when it is known.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0}")]
    Syntax(String),

    #[error("line {line}: {message}")]
    AtLine { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("unknown preset `{0}` (see `list-presets`)")]
    UnknownPreset(String),

    #[error("cannot read config {path}: {message}")]
    Read { path: String, message: String },
}
