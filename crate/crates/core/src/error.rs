use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("inhomogeneous relation: {0}")]
    Inhomogeneous(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("incompatible arities: {0}")]
    Arity(String),
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("not completed: {0}")]
    NotCompleted(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
