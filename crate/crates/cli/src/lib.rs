//! Library side of the `icr-dmt` command: run configuration, figure
//! presets, parallel drivers for the simulator and the oracle, and the CSV
//! writers. `main.rs` is a thin clap front end over these.

// negated float comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod parallel;
pub mod presets;

use icr_dmt_core::Error as CoreError;

/// Name of the environment variable holding the default worker count.
pub const THREADS_ENV: &str = "ICR_DMT_THREADS";

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const INSUFFICIENT_DATA: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::InsufficientData { .. }) => exit::INSUFFICIENT_DATA,
            _ => exit::USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Builds a pool with `threads` workers, or the environment default.
pub fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let n = threads
        .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .unwrap_or(0);
    Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?)
}
