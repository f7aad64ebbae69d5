//! Shared error type for the whole pipeline.

/// Errors surfaced by any module in this crate.
///
/// Variants are grouped so the CLI can map them onto exit codes:
/// user/configuration problems, data contract violations, and numerical
/// failures are distinguishable without string matching.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Incompatible operand shapes, naming the operation and the offending dimensions.
    #[error("{op}: shape mismatch: {detail}")]
    Shape { op: &'static str, detail: String },

    /// Cholesky factorization hit a non-positive pivot.
    #[error("cholesky: matrix not positive definite at pivot {pivot}")]
    NotPositiveDefinite { pivot: usize },

    /// Covariance could not be factorized even after jitter escalation.
    #[error("covariance conditioning failure for encounter {encounter}: {detail}")]
    Conditioning { encounter: String, detail: String },

    /// A parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A caller violated an operation precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Bad or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Cohort construction failed (e.g. not enough controls to match).
    #[error("cohort error: {0}")]
    Cohort(String),

    /// Metric evaluation is undefined for the given input.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// Training stopped due to a non-finite loss or similar fault.
    #[error("training aborted: {0}")]
    TrainAbort(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed data file.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
