//! Drivers behind the `kronface` command: the full pipeline, run reports,
//! reference tables and the reproduction checks.

pub mod checks;
pub mod golden;
pub mod pipeline;
pub mod report;

pub use checks::{Check, Checker};
pub use pipeline::{run_pipeline, PipelineOutput, RunParams};
pub use report::RunReport;

/// Largest grid `n1·n2` accepted by default.
pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] kronface::Error),
    #[error("reference table: {0}")]
    Golden(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 usage, 2 acceptance mismatch, 3 internal consistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(kronface::Error::InputDomain(_)) => 1,
            CliError::Mismatch(_) => 2,
            _ => 3,
        }
    }
}

/// Rejects empty grids and grids above `cap`.
pub fn check_grid_size(n1: usize, n2: usize, cap: usize) -> Result<(), CliError> {
    if n1 == 0 || n2 == 0 || n1 * n2 > cap {
        return Err(CliError::Usage(format!("grid {n1}×{n2} must satisfy 1 ≤ n1·n2 ≤ {cap}")));
    }
    Ok(())
}

/// `"4,3,2"` → `(4,3,2)`; the empty string is the empty partition.
pub fn parse_partition(text: &str) -> Result<kronface::Partition, CliError> {
    let parts = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("malformed partition {text:?}")))?
    };
    kronface::Partition::new(parts).map_err(|e| CliError::Usage(e.to_string()))
}
