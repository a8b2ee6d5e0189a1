use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("agent {0} has no valuation for itself")]
    SelfValuation(usize),

    #[error("agents must be distinct, got {0} twice")]
    SameAgent(usize),

    #[error("index {index} out of range for {len} {what}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid seat graph: {0}")]
    InvalidGraph(String),

    #[error("not a bijection: {0}")]
    NotBijection(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("at least two agents are needed to derive 1-D valuations, got {0}")]
    TooFewAgents(usize),

    #[error("operation requires symmetric preferences")]
    NotSymmetric,

    #[error("operation requires {expected}-utility, instance uses {found}-utility")]
    WrongUtility { expected: char, found: char },

    #[error("score vectors are over different score levels")]
    LevelMismatch,

    #[error("instance has no 1-D positions")]
    MissingPositions,

    #[error("seat graph class not supported here: {0}")]
    UnsupportedGraph(String),

    #[error("{what} = {value} exceeds the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent parameters: {0}")]
    InconsistentParams(String),

    #[error("witness does not verify: {0}")]
    InvalidWitness(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
