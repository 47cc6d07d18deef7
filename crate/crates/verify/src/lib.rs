//! Verification suites over `pgl3-lattices`, with text and JSON reports.

pub mod report;
pub mod suites;

pub use report::{Check, Report};
pub use suites::{run_suite, Options, Suite};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] pgl3_lattices::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
