use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid basis: {0}")]
    Basis(String),

    #[error("degree mismatch in {context}: expected {expected}, found {found}")]
    Degree {
        context: String,
        expected: i64,
        found: i64,
    },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("signature mismatch: {0}")]
    Signature(String),

    #[error("word of length {length} exceeds truncation bound {bound}")]
    Truncation { length: usize, bound: usize },

    #[error("shape k+l = {requested} exceeds the enumeration bound {bound}")]
    Bound { requested: usize, bound: usize },

    #[error("operation requires the two-element field, found {0}")]
    FieldRequired(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
