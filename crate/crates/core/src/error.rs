use thiserror::Error;

/// Errors raised by the word, morphism, generator and complexity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol:?} is not in the alphabet {alphabet}")]
    UnknownSymbol { symbol: char, alphabet: String },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A mathematical identity that must hold did not. Carries the counterexample.
    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("morphism is not an endomorphism (source {source_alphabet}, target {target_alphabet})")]
    NotEndomorphism {
        source_alphabet: String,
        target_alphabet: String,
    },

    #[error("morphism is not prolongable on {0:?}")]
    NotProlongable(char),

    #[error("image length {length} exceeds the limit {limit}")]
    ImageTooLong { length: usize, limit: usize },

    #[error("word expected over a binary alphabet, got {0}")]
    NotBinary(String),

    #[error("generator produced only {produced} symbols, {requested} requested")]
    FiniteWord { produced: usize, requested: usize },

    #[error(
        "factor set of length {n} did not stabilize within prefix cap {cap} \
         (last two counts {previous} and {current})"
    )]
    Stabilization {
        n: usize,
        cap: usize,
        previous: usize,
        current: usize,
    },

    #[error("word has no phi^{j}-factorization")]
    NoFactorization { j: u32 },

    #[error("not a phi^{k}-image suffix: no offset decodes the prefix")]
    NotDecodable { k: u32 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_stabilization(&self) -> bool {
        matches!(self, Error::Stabilization { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
