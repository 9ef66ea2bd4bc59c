use thiserror::Error;

/// Errors raised by the library. Horizon problems are kept apart from
/// malformed input so front ends can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("empty word")]
    EmptyWord,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("step {q} too large for word of length {n}")]
    StepTooLarge { q: usize, n: usize },
    #[error("step {q} does not satisfy the shift-match condition")]
    InvalidStep { q: usize },
    #[error("horizon too small: need {needed}, have {available}")]
    HorizonTooSmall { needed: usize, available: usize },
    #[error("prefix too short: {0}")]
    PrefixTooShort(String),
    #[error("word is not a factor of the language")]
    NotAFactor,
    #[error("invalid oracle: {0}")]
    InvalidOracle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("RBC not established: {0}")]
    RbcNotEstablished(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inadmissible move: {0}")]
    InadmissibleMove(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures caused by a finite horizon or prefix rather than bad input.
    pub fn is_horizon(&self) -> bool {
        matches!(self, Error::HorizonTooSmall { .. } | Error::PrefixTooShort(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
