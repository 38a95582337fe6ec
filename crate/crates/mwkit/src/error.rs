use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwError {
    #[error("input error: {0}")]
    Input(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("general position failure: {0}")]
    GeneralPosition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("sampling error: {0}")]
    Sampling(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, MwError>;
