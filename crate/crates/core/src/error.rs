//! Crate-wide error type.

use thiserror::Error;

/// Unified result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library surface.
#[derive(Debug, Error)]
pub enum Error {
    /// Formula text did not conform to the grammar.
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    /// A reserved word was used where an atom is required.
    #[error("reserved word `{0}` cannot be used as an atom")]
    ReservedWord(String),

    /// An identifier does not match `[a-z_][a-zA-Z0-9_]*`.
    #[error("invalid proposition name `{0}`")]
    InvalidName(String),

    /// A formula or trace references propositions outside the alphabet in use.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// DFA construction exceeded the configured state budget.
    #[error("formula too complex: state budget of {cap} states exceeded")]
    TooComplex { cap: usize },

    /// The alphabet is too large to enumerate its full symbol set.
    #[error("cannot enumerate 2^{0} symbols; restrict the alphabet")]
    AlphabetTooLarge(usize),

    /// No trace of the requested polarity exists within the length range.
    #[error("no {polarity} trace of length {lo}..={hi} exists")]
    NoTraceInRange { polarity: &'static str, lo: usize, hi: usize },

    /// Random generation gave up after its retry budget.
    #[error("generation failure: {0}")]
    Generation(String),

    /// Tensor or embedding dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// A numeric operation produced a non-finite value.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A guard or edge formula contains a temporal operator.
    #[error("temporal operator in propositional context: {0}")]
    TemporalInGuard(String),

    /// A proposition has no feature row in the embedder model.
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    /// Serialized data (checkpoint, corpus, domain, report) is malformed.
    #[error("format error: {0}")]
    Format(String),

    /// A stored label disagrees with the semantic oracle.
    #[error("label verification failed: {0}")]
    LabelMismatch(String),

    /// The cooking domain file violates a structural constraint.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
