use thiserror::Error;

/// Errors shared across the crate.
///
/// `CapExceeded` is the only variant that signals a resource guard rather
/// than a domain problem; callers that map errors to process exit codes rely
/// on that distinction.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?} in cover pair")]
    UnknownLabel(String),

    #[error("cover relation contains a directed cycle")]
    CoverCycle,

    #[error("cover pair ({lower:?}, {upper:?}) is implied by the others and is not a covering relation")]
    RedundantCover { lower: String, upper: String },

    #[error("{0:?} is not an antichain: contains a comparable pair")]
    NotAntichain(String),

    #[error("matrices belong to different posets")]
    PosetMismatch,

    #[error("element is not a unit: zero diagonal entry at index {index}")]
    NonUnit { index: usize },

    #[error("support violation: nonzero entry at ({row}, {col}) outside the order relation")]
    SupportViolation { row: usize, col: usize },

    #[error("{what} enumeration exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: u128 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("poset JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
