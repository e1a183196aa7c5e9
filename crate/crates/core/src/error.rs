use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order {order} exceeds the enumeration bound {bound} (raise --max-enum-order)")]
    BoundExceeded { order: String, bound: u64 },

    #[error("action degree {degree} exceeds the bound {bound} (raise --max-action-degree)")]
    DegreeExceeded { degree: u128, bound: u64 },

    #[error("group is not transitive")]
    Intransitive,

    #[error("range error: {0}")]
    Range(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported field size {0}")]
    UnsupportedField(u32),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("design error: {0}")]
    Design(String),

    #[error("group does not preserve the design: {0}")]
    NotPreserved(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {msg}")]
    ParseLine { line: usize, msg: String },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
