use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("valuation has no value for `{0}`")]
    IncompleteValuation(String),

    #[error("arithmetic overflow while evaluating `{0}`")]
    Overflow(String),
}
