//! Crate-wide error type.
//!
//! Precondition violations surface as descriptive variants rather than
//! panics; "not found" outcomes of bounded searches are ordinary values on
//! the relevant result enums, not errors, except where an operation cannot
//! proceed at all without the missing object.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A letter's generator index is zero or exceeds the ambient rank.
    #[error("invalid letter: generator index {index} outside rank {rank}")]
    InvalidLetter { index: u32, rank: u32 },

    /// Two words or elements from groups of different rank were combined.
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    /// An occurrence-counting pattern was empty.
    #[error("pattern word must be nonempty")]
    EmptyPattern,

    /// An operation requiring a nonempty word received the empty word.
    #[error("word must be nonempty")]
    EmptyWord,

    /// A pattern that must be cyclically reduced is not.
    #[error("pattern is not cyclically reduced")]
    PatternNotCyclicallyReduced,

    /// A word is shorter than the operation's minimum length.
    #[error("word too short: need length >= {min}, got {len}")]
    TooShort { min: usize, len: usize },

    /// A decomposition pattern fails its side conditions.
    #[error("invalid decomposition pattern: {reason}")]
    PatternInvalid { reason: String },

    /// A sample lacks structure the operation requires.
    #[error("sample unsuitable: {0}")]
    SampleUnsuitable(String),

    /// An enumeration would materialize more elements than the budget cap.
    #[error("budget exceeded: needs {needed} elements, cap is {cap}")]
    BudgetExceeded { needed: usize, cap: usize },

    /// A sampled horizon is too small for the requested claim.
    #[error("sample horizon too small: need radius {needed}, have {have}")]
    HorizonTooSmall { needed: u64, have: u64 },

    /// A statistic needs more data points than the sample provides.
    #[error("too few points: need {min}, got {got}")]
    TooFewPoints { min: usize, got: usize },

    /// A composition step needed a blocker that does not exist in range.
    #[error("no blocker found within length {searched_to}")]
    BlockerNotFound { searched_to: usize },

    /// An element was combined through a group model it does not belong to.
    #[error("element does not belong to this group model")]
    ModelMismatch,

    /// Textual input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A window bound or scheme parameter is out of range.
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}
