use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("ground-set size mismatch: expected {expected}, got {actual}")]
    GroundSetMismatch { expected: usize, actual: usize },

    #[error("element {element} out of range for ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("invalid objective specification: {0}")]
    InvalidSpec(String),

    #[error("unsupported constraint for {algorithm}: {reason}")]
    UnsupportedConstraint { algorithm: &'static str, reason: String },

    #[error("instance too large: {count} independent sets exceeds cap {cap}")]
    InstanceTooLarge { count: u128, cap: u128 },

    #[error("{what} did not converge after {iterations} iterations (last change {last_change:e})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        last_change: f64,
    },

    #[error("numerical abort in {algorithm} at iteration {iteration}: {quantity} is not finite")]
    NumericalAbort {
        algorithm: &'static str,
        iteration: usize,
        quantity: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("step size {gamma} exceeds the stability bound {bound}")]
    StepTooLarge { gamma: f64, bound: f64 },

    #[error("data error in {path}: {message}")]
    Data { path: PathBuf, message: String },

    #[error("malformed input at line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::Json(_)
            | Error::StepTooLarge { .. }
            | Error::UnsupportedConstraint { .. }
            | Error::InvalidConstraint(_)
            | Error::InvalidRegion(_)
            | Error::InvalidSpec(_)
            | Error::Precondition(_) => 1,
            Error::Data { .. }
            | Error::Malformed { .. }
            | Error::Io { .. }
            | Error::DimensionMismatch { .. }
            | Error::GroundSetMismatch { .. }
            | Error::ElementOutOfRange { .. }
            | Error::InstanceTooLarge { .. } => 2,
            Error::NonFinite(_) | Error::NotConverged { .. } | Error::NumericalAbort { .. } => 3,
        }
    }
}
