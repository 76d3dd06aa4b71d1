//! Batch tooling around `maskmark-core`: corpus loading, the robustness
//! report, the k_alpha sweep and strength-floor calibration.

pub mod bench;
pub mod config;
pub mod corpus;

use std::fmt;

pub use bench::{calibrate_floor, report, sweep_k, Calibration, ReportRow, SweepRow};
pub use config::{BenchConfig, ClassSpec};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const IO: i32 = 2;
    pub const PARTIAL: i32 = 3;
}

/// Bad user input that is not a core library error.
#[derive(Debug)]
pub struct ValidationError(pub String);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationError {}

/// Some corpus items failed; the others were processed.
#[derive(Debug)]
pub struct PartialFailure(pub usize);

impl fmt::Display for PartialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} corpus item(s) failed", self.0)
    }
}

impl std::error::Error for PartialFailure {}

/// Maps an error chain onto [`exit`] codes.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.is::<PartialFailure>() {
            return exit::PARTIAL;
        }
        if let Some(e) = cause.downcast_ref::<maskmark_core::Error>() {
            return if e.is_io() { exit::IO } else { exit::VALIDATION };
        }
        if cause.is::<std::io::Error>() {
            return exit::IO;
        }
        if cause.is::<ValidationError>() {
            return exit::VALIDATION;
        }
    }
    exit::VALIDATION
}

/// Runs `f` on a pool with `threads` workers (0 = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(f))
}
