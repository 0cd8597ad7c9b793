use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants fall in two families: domain errors (the input is mathematically
/// invalid or the requested object does not exist) and certification failures
/// (the answer exists but could not be decided within the configured caps).
/// [`Error::is_certification_failure`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid sequence literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("digit {0} outside the alphabet 0..=9")]
    DigitOutOfRange(u8),

    #[error("empty word")]
    EmptyWord,

    #[error("invalid base: {0}")]
    InvalidBeta(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not a valid greedy expansion of 1 for its own root")]
    VerificationFailed(String),

    #[error("word {0} is not the greedy expansion of a beta-rational number")]
    NotGreedyRational(String),

    #[error("tau would increment digit 1 at position {position} of {seq}")]
    DigitOverflow { seq: String, position: usize },

    #[error("theta would decrement digit 0 at position {position} of {seq}")]
    DigitUnderflow { seq: String, position: usize },

    #[error("subshift endpoints have period {period}, above the enumeration cap {cap}")]
    CapTooSmall { period: usize, cap: usize },

    #[error("subshift is not a finite set of periodic points")]
    NotFinite,

    #[error("inputs are identical")]
    IdenticalInputs,

    #[error("could not decide digit {index} within {cap} refinements")]
    UndecidableDigit { index: usize, cap: u32 },

    #[error("could not separate enclosures within {0} refinements")]
    UndecidableComparison(u32),

    #[error("refinement cap of {0} halvings exceeded")]
    RefinementCapExceeded(u32),

    #[error("comparison undecided after {0} digits")]
    InconclusiveAtDepth(usize),
}

impl Error {
    /// True for failures of the certified machinery (as opposed to genuine
    /// domain errors). The CLI maps these to a separate exit code.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::UndecidableDigit { .. }
                | Error::UndecidableComparison(_)
                | Error::RefinementCapExceeded(_)
                | Error::InconclusiveAtDepth(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
