//! Error types shared across parsing, fuzzification, and mining.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Top-level error type for everything that can go wrong in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A transaction file line could not be parsed.
    #[error("line {line}: {kind}")]
    Parse {
        /// 1-based line number in the input.
        line: usize,
        kind: ParseErrorKind,
    },

    /// The input contained no transactions at all.
    #[error("empty database: no transactions found")]
    EmptyDatabase,

    /// A membership function configuration was malformed.
    #[error("membership config: {0}")]
    Config(ConfigErrorKind),

    /// A quantity handed to the fuzzifier was not a positive finite number.
    #[error("quantity {0} must be a positive finite number")]
    InvalidQuantity(f64),

    /// A threshold could not be interpreted.
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),

    /// The rare threshold resolved above the frequent threshold.
    #[error("threshold inversion: min-rare {min_rare} exceeds max-freq {max_freq}")]
    ThresholdInversion { min_rare: f64, max_freq: f64 },

    /// A term was looked up that the revised database does not retain.
    #[error("term {0} is not in the revised database")]
    UnknownTerm(String),

    /// The brute-force oracle refused to enumerate too large a search space.
    #[error("{terms} retained terms exceed the oracle cap of {cap}")]
    OracleCapExceeded { terms: usize, cap: usize },

    /// Two fuzzy lists were joined that do not share a valid prefix.
    #[error("fuzzy-list join mismatch: {0}")]
    JoinMismatch(String),

    /// An underlying I/O operation failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What exactly was wrong with a transaction file line.
#[derive(Debug, Error)]
pub enum ParseErrorKind {
    /// A token did not look like `item:quantity`.
    #[error("malformed token `{0}`: expected `item:quantity`")]
    MalformedToken(String),

    /// The quantity part of a token was not a number.
    #[error("item `{item}` has unparseable quantity `{raw}`")]
    BadQuantity { item: String, raw: String },

    /// The quantity parsed but was zero, negative, or not finite.
    #[error("item `{item}` has quantity {value}, which must be positive and finite")]
    InvalidQuantity { item: String, value: f64 },

    /// The same item appeared twice in one transaction.
    #[error("duplicate item `{0}` in transaction")]
    DuplicateItem(String),
}

/// What exactly was wrong with a membership configuration.
#[derive(Debug, Error)]
pub enum ConfigErrorKind {
    /// A config line was not of the form `term <label> <peak>`.
    #[error("line {line}: malformed directive `{raw}`: expected `term <label> <peak>`")]
    MalformedLine { line: usize, raw: String },

    /// Fewer than two terms were defined.
    #[error("at least two terms are required, got {0}")]
    TooFewTerms(usize),

    /// Two terms reused the same label.
    #[error("duplicate term label `{0}`")]
    DuplicateLabel(String),

    /// Peaks were not strictly increasing in declaration order.
    #[error("peaks must be strictly increasing: `{prev_label}` ({prev}) is not below `{label}` ({peak})")]
    NonIncreasingPeaks {
        prev_label: String,
        prev: f64,
        label: String,
        peak: f64,
    },
}
