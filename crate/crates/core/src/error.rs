use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation {input:?}: {reason}")]
    InvalidPermutation { input: String, reason: String },

    #[error("skeleton has {skeleton} points but {blocks} blocks were supplied")]
    InflationArity { skeleton: usize, blocks: usize },

    #[error("empty block in inflation")]
    EmptyBlock,

    #[error("membership predicate is not downward closed: {member} is a member but its deletion {deletion} is not")]
    NotDownwardClosed { member: String, deletion: String },

    #[error("invalid gridding matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),

    #[error("division by the zero function")]
    DivisionByZero,

    #[error("denominator vanishes at x = 0, no power series expansion")]
    NotAPowerSeries,

    #[error("series coefficient {0} is not an integer")]
    NonIntegralSeries(usize),

    #[error("{factors} special points need a zero of order at least {factors} but the function has order {order}")]
    InflationOrder { order: i64, factors: usize },

    #[error("cannot parse expression {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid encoding scheme: {0}")]
    InvalidScheme(String),

    #[error("resource {name}: {reason}")]
    Resource { name: String, reason: String },

    #[error("stage {stage} failed: {detail}")]
    Stage { stage: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
