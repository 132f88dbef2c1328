use std::fmt;

use thiserror::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{pos}: syntax error: expected {expected}, found {found}")]
    Syntax {
        pos: Pos,
        expected: String,
        found: String,
    },

    #[error("{pos}: unbound identifier `{name}`")]
    UnboundIdentifier { name: String, pos: Pos },

    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),

    #[error("variable `{variable}` is written by two parallel branches in `{event}`")]
    ParallelWriteConflict { variable: String, event: String },

    #[error(
        "variable `{variable}` is written by one parallel branch and read by another in `{event}`"
    )]
    ParallelReadConflict { variable: String, event: String },

    #[error("`{name}` is assigned in `{event}` but is not a variable")]
    InvalidAssignment { name: String, event: String },

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("missing ASSERTIONS clause (state predicates are mandatory)")]
    MissingAssertions,

    #[error("`{concrete}` refines `{expected}` but the abstract machine is `{found}`")]
    NameMismatch {
        concrete: String,
        expected: String,
        found: String,
    },

    #[error("event sets differ (missing: {missing:?}, extra: {extra:?})")]
    EventSetMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("unsupported refinement: {0}")]
    UnsupportedRefinement(String),
}

impl FrontendError {
    /// Position of the error in the source, when it has one.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            FrontendError::Syntax { pos, .. } | FrontendError::UnboundIdentifier { pos, .. } => {
                Some(*pos)
            }
            _ => None,
        }
    }
}
