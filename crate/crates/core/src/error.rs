use thiserror::Error;

use crate::arith::SingularReport;

/// Errors raised by the library. Each variant maps onto one failure mode of
/// the public operations; the CLI turns them into exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}` (expected p/q or an integer)")]
    InvalidRational(String),

    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty bounds for variable {0}: lower bound exceeds upper bound")]
    EmptyBox(usize),

    #[error("degenerate input: no variables but constraint {0} reads 0 <= {1}")]
    DegenerateInput(usize, String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("vertex weight must be at least 1 (vertex `{0}`)")]
    NonPositiveWeight(String),

    #[error("self-edge at vertex `{0}`")]
    SelfEdge(String),

    #[error("edge multiplicity must be at least 1 ({0}-{1})")]
    ZeroMultiplicity(String, String),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),

    #[error("no edge between `{0}` and `{1}`")]
    MissingEdge(String, String),

    #[error("edge {0}-{1} has multiplicity {2}; only simple edges can be blown up")]
    NonSimpleEdge(String, String, u32),

    #[error("vertex `{id}` cannot be blown down: {reason}")]
    NotContractible { id: String, reason: String },

    #[error("singular intersection matrix (rank {}, consistent: {})", .0.rank, .0.consistent)]
    Singular(SingularReport),

    #[error("epsilon must satisfy {constraint}, got {value}")]
    EpsilonOutOfRange { value: String, constraint: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget of {budget} evaluations exceeded")]
    BudgetExceeded { budget: usize },

    #[error("threshold {threshold} is at or above the supremum {supremum} of an infinite family")]
    InfiniteTail { threshold: String, supremum: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
