//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range [2, 2^31)")]
    NotPrime(u32),

    #[error("ideal generator {index} is not homogeneous")]
    NonHomogeneousGenerator { index: usize },

    #[error("ideal generator {index} has degree 0; the quotient would be the zero ring")]
    UnitIdealGenerator { index: usize },

    #[error("expected a polynomial in {expected} variables, got {got}")]
    VariableCountMismatch { expected: usize, got: usize },

    #[error("matrix entry ({row}, {col}) is not homogeneous of degree {expected}")]
    InhomogeneousEntry { row: usize, col: usize, expected: i64 },

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("syzygy generator beyond the degree window at homological step {step} (degree cap {cap})")]
    TruncationOverflow { step: usize, cap: i64 },

    #[error("complexity window ({0}, {1}) is too short; need length >= 4")]
    WindowTooShort(usize, usize),

    #[error("cocycle condition fails: not a cocycle")]
    NotACocycle,

    #[error("Ext classes are not composable: {0}")]
    NotComposable(String),

    #[error("chain-map lifting system inconsistent at step {step}, column {column} (cocycle-condition bug)")]
    LiftInconsistent { step: usize, column: usize },

    #[error("maps do not compose to zero")]
    CompositionNonzero,

    #[error("the ring is not Cohen-Macaulay (depth {depth} < dim {dim})")]
    RingNotCohenMacaulay { depth: usize, dim: usize },

    #[error("the ring is not a recognized complete intersection fixture")]
    NotCompleteIntersection,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certificate transport failed: {0}")]
    Transport(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("{0}")]
    Internal(String),
}
