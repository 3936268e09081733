use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word {word} is not an ({m},{n})-parking word")]
    NotAParkingWord { m: usize, n: usize, word: String },

    #[error("letter {letter} is outside the alphabet 0..{m}")]
    LetterOutOfRange { letter: usize, m: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("fixed-point iteration gave up after {iterations} word applications")]
    IterationBudgetExhausted { iterations: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("no fixed-point witness found: {0}")]
    WitnessNotFound(String),

    #[error("offsets are too close together: {0}")]
    InsufficientGap(String),

    #[error("m={m} and n={n} are not coprime")]
    NotCoprime { m: usize, n: usize },

    #[error("level {0} is not removable from this filter")]
    LevelNotRemovable(i64),

    #[error("filter is not a Dyck filter (minimum level is {min}, not 0)")]
    NotDyck { min: i64 },

    #[error("window {0:?} is not increasing")]
    NotDominant(Vec<i64>),

    #[error("window {window:?} does not label an alcove of the Sommers region for m={m}")]
    NotInSommers { window: Vec<i64>, m: usize },

    #[error("invalid filter: {0}")]
    InvalidFilter(String),

    #[error("invalid filter tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid affine permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
