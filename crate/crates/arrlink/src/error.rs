use thiserror::Error;

/// Errors raised by the library. Messages are meant to be shown to users of
/// the command-line tool as they are.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("linear form is identically zero")]
    ZeroForm,

    #[error("forms {first} and {second} are proportional (arrangement is not squarefree)")]
    ProportionalForms { first: usize, second: usize },

    #[error("hyperplane already in arrangement")]
    HyperplaneInArrangement,

    #[error("non-generic restriction: the hyperplane contains a codimension-2 flat or merges two of them")]
    NonGenericRestriction,

    #[error("not almost generic: the hyperplane contains {0} flats")]
    NotAlmostGeneric(usize),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("p cannot be a minimal generator: F1 has no summand of twist {0}")]
    NotMinimalGenerator(i64),

    #[error("not Cohen-Macaulay: {0}")]
    NotCohenMacaulay(String),

    #[error("residual has no minimal generator of degree {0}")]
    MissingTwist(i64),

    #[error("complete intersection case, use check_ci")]
    Concurrent,

    #[error("arrangement class is {found}, expected {expected}")]
    WrongClass { expected: String, found: String },

    #[error("invalid resolution: {0}")]
    InvalidResolution(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),

    #[error("oracle certification failed: {0}")]
    Certification(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
