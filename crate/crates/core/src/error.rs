use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the foundation types and config loading.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    #[error("stage `{stage}` ends before it starts ({end_ms} < {start_ms})")]
    StageEndsBeforeStart {
        stage: String,
        start_ms: u64,
        end_ms: u64,
    },

    #[error("config file {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error("config override `{key}`: {reason}")]
    ConfigOverride { key: String, reason: String },

    #[error("io on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CoreError {
    pub fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        CoreError::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
