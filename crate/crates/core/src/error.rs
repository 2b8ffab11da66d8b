use thiserror::Error;

use crate::poset::PairOutcome;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a strict partial order")]
    NotStrictOrder,
    #[error("transitive closure creates a cycle through element {0}")]
    Cycle(usize),
    #[error("element {elem} out of range for n = {n}")]
    OutOfRange { elem: usize, n: usize },
    #[error("{what} supports n <= {max}, got {n}")]
    Guard {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("n = {0} is not a multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("invalid level partition: {0}")]
    BadPartition(String),
    #[error("no poset count for n = {0}")]
    MissingCount(usize),
    #[error("counts file line {line}: {msg}")]
    CountsFormat { line: usize, msg: String },
    #[error("outcome {outcome:?} for ({a}, {b}) contradicts earlier observations")]
    Inconsistent {
        a: usize,
        b: usize,
        outcome: PairOutcome,
    },
    #[error("the learner has no pending comparison")]
    NoPendingQuery,
    #[error("the learner has not finished")]
    Unfinished,
    #[error("expected a poset on {expected} elements, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid pair ({0}, {1})")]
    BadPair(usize, usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
