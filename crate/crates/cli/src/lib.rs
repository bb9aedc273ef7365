//! Harness library behind the `slidesum` binary: deterministic data
//! generation, conformance grids, and the benchmark/sweep machinery with CSV
//! output. The numeric kernels live in `slidesum-core`; everything here is
//! plumbing around them (timing, checksums, file IO, reporting).

use std::path::PathBuf;

pub mod bench;
pub mod gen;
pub mod verify;

/// Harness-level failures, mapped onto the process exit codes the binary
/// documents: 1 verification failure, 2 configuration error, 3 I/O error.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("verification failed: {failed} of {checked} checks")]
    VerifyFailed { failed: usize, checked: usize },
}

impl HarnessError {
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::VerifyFailed { .. } => 1,
            HarnessError::Config(_) => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}
