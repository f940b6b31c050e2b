use thiserror::Error;

/// Errors raised by model construction, parsing, and the checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GyroError {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{kind} {index} is not a permutation of 0..{n}")]
    NotPermutation {
        kind: &'static str,
        index: usize,
        n: usize,
    },

    #[error("element 0 is not a two-sided identity: {0}")]
    IdentityViolated(String),

    #[error("table is not associative: ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("product needs at least one factor")]
    EmptyProduct,

    #[error("sampled mode requires an explicit seed")]
    MissingSeed,

    #[error("exhaustive mode is not available on a continuous carrier")]
    NotEnumerable,

    #[error("size {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("subset width {got} does not match carrier size {expected}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("postcondition violated: {0}")]
    PostconditionFailed(String),

    #[error("invalid enumeration: {0}")]
    InvalidEnumeration(String),

    #[error("closure did not stabilise within {budget} elements")]
    PartialClosure { budget: usize },

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = GyroError> = std::result::Result<T, E>;
