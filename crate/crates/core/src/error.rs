use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("letter id {0} does not belong to this alphabet")]
    DomainMismatch(u32),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("{0} requires a non-empty word")]
    EmptyWord(&'static str),

    #[error("{0} requires a non-empty input set")]
    EmptySet(&'static str),

    #[error("{0} requires a non-zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("polynomial has no letters (support is the empty word only)")]
    NoLetters,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("word of length {length} exceeds the length bound {bound}; try a larger --bound")]
    BoundExceeded { length: usize, bound: usize },

    #[error("length bound {bound} is smaller than the longest generator word ({needed})")]
    BoundTooSmall { bound: usize, needed: usize },

    #[error("generator `{0}` has non-zero augmentation")]
    NonAugmentedGenerator(String),

    #[error("no coproduct entry for letter `{0}`")]
    MissingCoproductEntry(String),

    #[error("invalid coproduct specification: {}", .0.join("; "))]
    InvalidSpec(Vec<String>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no witness for `{letter}` within bounds (L = {bound}, S = {slack})")]
    NotFoundWithinBounds {
        letter: String,
        bound: usize,
        slack: usize,
    },

    #[error("structural bound violated: {0}")]
    BoundViolation(String),

    #[error("inconsistent certificates: {0}")]
    Inconsistent(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("internal invariant failure: {0}")]
    Invariant(String),
}
