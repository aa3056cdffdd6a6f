use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown section [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: unknown key {key:?} in [{section}]{}", hint(suggestion))]
    UnknownKey {
        line: usize,
        section: String,
        key: String,
        suggestion: Option<String>,
    },
    #[error("missing required key {key:?} in [{section}]")]
    Missing { section: String, key: String },
    #[error("line {line}: invalid value for {key:?}: {message}")]
    Invalid {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: unknown probe {name:?}{}", hint(suggestion))]
    UnknownProbe {
        line: usize,
        name: String,
        suggestion: Option<String>,
    },
    #[error("line {line}: unknown audit {name:?}{}", hint(suggestion))]
    UnknownAudit {
        line: usize,
        name: String,
        suggestion: Option<String>,
    },
}

fn hint(s: &Option<String>) -> String {
    match s {
        Some(s) => format!(" (did you mean {s:?}?)"),
        None => String::new(),
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error(transparent)]
    Core(#[from] nsk_core::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("output directory {0} is used by more than one configuration")]
    DuplicateOutput(PathBuf),
    #[error("{0}")]
    Usage(String),
}

impl LabError {
    pub(crate) fn io(path: impl Into<PathBuf>, e: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            message: e.to_string(),
        }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(_) => 3,
            _ => 2,
        }
    }
}
