use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate matrix label")]
    DuplicateLabel,
    #[error("entry refers to a label outside the matrix")]
    UnknownLabel,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("element does not belong to this presentation")]
    MismatchedPresentation,
    #[error("generator {0} has infinite height")]
    InfiniteHeight(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("action entry {op} {generator} contradicts a forced value: {detail}")]
    ActionContradiction { generator: String, op: String, detail: String },
    #[error("invalid differential: {0}")]
    InvalidDifferential(String),
    #[error("cup length closed form {formula} disagrees with enumeration {oracle}")]
    CupLengthDisagreement { formula: u32, oracle: u32 },
    #[error("no catalog entry for {group} at p = {prime}")]
    UnknownEntry { group: String, prime: u32 },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
