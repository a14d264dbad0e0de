use std::path::PathBuf;

use cavity_metrology::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const REGIME_FLAG: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const PHYSICS: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed config {path}: {source}")]
    ParseConfig {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // an unreadable config is reported like a malformed one
            CliError::ReadConfig { .. } | CliError::ParseConfig { .. } | CliError::Config(_) => exit::PARSE,
            CliError::Core(e) if e.is_physics_domain() => exit::PHYSICS,
            CliError::Core(_) => exit::PARSE,
            CliError::Write { .. } => exit::IO,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
