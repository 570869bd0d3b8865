use thiserror::Error;

/// Errors raised by the library. The CLI maps the variants onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{what} exceeds cap {cap} (reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        reached: u64,
    },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unsupported field order {0}")]
    UnsupportedField(u64),
    #[error("singular matrix")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inadmissible element: {0}")]
    Inadmissible(String),
    #[error("non-canonical point: {0}")]
    NonCanonical(String),
    #[error("exceptional case: {0}")]
    Exceptional(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
