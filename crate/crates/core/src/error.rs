use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arc {arc} appears {found} time(s) in crossing slots, expected {expected}")]
    ArcMultiplicity {
        arc: usize,
        found: usize,
        expected: usize,
    },

    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("underlying map is disconnected")]
    Disconnected,

    #[error("face tracing found {found} faces, a spherical diagram with {crossings} crossings has {expected}")]
    NonSpherical {
        found: usize,
        expected: usize,
        crossings: usize,
    },

    #[error("star placement does not resolve to a region: {0}")]
    UnresolvableStar(String),

    #[error("invalid clock state: {0}")]
    InvalidState(String),

    #[error("invalid trail: {0}")]
    InvalidTrail(String),

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("move is not legal on this state")]
    IllegalMove,

    #[error("mismatched diagrams: {0}")]
    MismatchedDiagrams(String),

    #[error("trails differ at {0} site(s), which is not one single or double exchange")]
    NotAnExchange(usize),

    #[error("{count} states exceed the cap of {cap}")]
    CapExceeded { count: usize, cap: usize },

    #[error("weight table: {0}")]
    Weights(String),

    #[error("polynomial: {0}")]
    Polynomial(String),

    /// A combinatorial statement that the theory guarantees failed to hold.
    #[error("theory discrepancy: {0}")]
    TheoryDiscrepancy(String),

    #[error("corpus: {0}")]
    Corpus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
