//! Library surface of the `dispersive` command-line runner: configuration
//! parsing, artifact serialization, and run orchestration. The binary in
//! `main.rs` is a thin argument-parsing shell over this.

pub mod config;
pub mod io;
pub mod runner;

use thiserror::Error;

/// Exit-code table, part of the public contract.
pub mod exit_code {
    pub const OK: i32 = 0;
    /// Unexpected failures (I/O and similar).
    pub const FAILURE: i32 = 1;
    /// Config or argument validation failed; nothing was written.
    pub const VALIDATION: i32 = 2;
    /// The run terminated on the blow-up detector.
    pub const BLOWUP: i32 = 3;
    /// The run terminated on the resolution monitor.
    pub const RESOLUTION_LOST: i32 = 4;
    /// The configured experiment did not pass.
    pub const EXPERIMENT_FAIL: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("format error: {0}")]
    Format(String),
    #[error("hash mismatch in {0}")]
    HashMismatch(String),
    #[error(transparent)]
    Core(#[from] dispersive::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::HashMismatch(_) => exit_code::VALIDATION,
            _ => exit_code::FAILURE,
        }
    }
}
