//! Front end for `segcalc-core`: scenario files, golden tables, verification
//! suites. Every command renders into a [`Output`] so it can be exercised
//! without spawning a process.

pub mod classjson;
pub mod commands;
pub mod report;
pub mod scenario;

use thiserror::Error;

/// Exit codes shared by every command.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] segcalc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_CONFIG
    }
}

/// Rendered command output plus its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    pub fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: EXIT_OK }
    }
}
