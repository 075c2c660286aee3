use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("bad index selection: {0}")]
    BadSelection(String),

    #[error("row and column selections differ in length ({rows} vs {cols})")]
    NonSquareSelection { rows: usize, cols: usize },

    #[error("zero diagonal entry at position {index}")]
    ZeroDiagonal { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("index {what}={index} out of range (max {max})")]
    BadIndex {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("grade {grade} equals the eigenvalue level; the projected operator is not invertible there")]
    GradeEqualsLevel { grade: usize },

    #[error("polynomial is not homogeneous of grade {grade}")]
    NotHomogeneous { grade: usize },

    #[error("right-hand side has a component in obstructed grade {grade}")]
    ObstructedRhs { grade: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("h_{k} at level {n} is not annihilated by the shifted operator")]
    EigenCheckFailed { n: usize, k: usize },

    #[error("lead-vector system for level {n}, k={k} is singular")]
    SingularSystem { n: usize, k: usize },

    #[error("Jordan chain check failed for level {n}, k={k}: {reason}")]
    ChainCheckFailed { n: usize, k: usize, reason: String },

    #[error("iterated chain differs from the closed form at level {n}, power k={k}")]
    MismatchWithClosedForm { n: usize, k: usize },

    #[error("chain elements have rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },

    #[error("Segre characteristic sums to {found}, expected {expected}")]
    SumMismatch { expected: usize, found: usize },

    #[error("oracle disagrees with theory on {quantity}: expected {expected}, found {found}")]
    TheoryMismatch {
        quantity: &'static str,
        expected: String,
        found: String,
    },

    #[error("no theory available for dimension d={d}")]
    OutOfTheoryScope { d: usize },

    #[error("vertex {0} is not in the graph")]
    VertexNotFound(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("polynomials live in different bases")]
    BasisMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
