//! Driver for the sudden-quench scenarios: run configurations, table and
//! frame output with metadata headers, and the acceptance manifest behind
//! `verify`.

pub mod config;
pub mod manifest;
pub mod output;
pub mod scenarios;

use thiserror::Error;

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "SUDDEN_QUENCH_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    /// The configuration or command line is malformed.
    #[error("usage: {0}")]
    Usage(String),

    #[error("config file: {0}")]
    Config(#[from] serde_json::Error),

    /// A computation failed.
    #[error("numerical failure: {0}")]
    Numerical(#[from] sudden_quench::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for usage errors, 3 for numerical and I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Size the global thread pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}
