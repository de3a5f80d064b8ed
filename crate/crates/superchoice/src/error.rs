use thiserror::Error;

/// Errors raised while building inputs or configuring procedures and searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("empty subset")]
    EmptySubset,
    #[error("profile needs at least one alternative and one criterion")]
    EmptyProfile,
    #[error("criterion {0} does not exist")]
    UnknownCriterion(usize),
    #[error("cannot move `{label}` up {steps} positions from rank {rank}")]
    BadMove {
        label: String,
        rank: usize,
        steps: usize,
    },
    #[error("an alternative cannot be compared with itself")]
    SelfComparison,
    #[error("unknown procedure `{0}`")]
    UnknownProcedure(String),
    #[error("procedure `{proc}` {msg}")]
    Parameter { proc: String, msg: String },
    #[error("two-stage id {0} is outside 1..=784")]
    BadTwoStageId(usize),
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
