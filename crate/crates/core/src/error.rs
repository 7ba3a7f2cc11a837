use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty word has no first or last letter")]
    EmptyWord,
    #[error("not a substitution: {0}")]
    NotSubstitution(String),
    #[error("endomorphism is not invertible")]
    NotInvertible,
    #[error("search budget of {limit} nodes exhausted")]
    Budget { limit: usize },
    #[error("length bound {requested} exceeds the configured cap {cap}")]
    BoundTooLarge { requested: usize, cap: usize },
    #[error("matrix has a negative entry")]
    NegativeEntry,
    #[error("no pattern split: {0}")]
    NoPattern(crate::decompose::NoPatternReason),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Raised when a state that the theory rules out is reached; indicates a bug.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
