use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid qubit count {0}: must be at least 1")]
    InvalidQubitCount(usize),

    #[error("{what} supports at most {max} qubits, got {n}")]
    TooManyQubits {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("state is not normalized: norm² = {0}")]
    NotNormalized(f64),

    #[error("density matrix is not Hermitian: |ρ[{row}][{col}] - conj(ρ[{col}][{row}])| = {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("density matrix trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("density matrix is not positive semidefinite (smallest eigenvalue below -1e-8)")]
    NotPositive,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("visibility {0} outside [0, 1]")]
    InvalidVisibility(f64),

    #[error("k = {k} out of range for n = {n} (need 1 <= k <= n)")]
    SeparabilityOutOfRange { k: usize, n: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("operation requires {expected} qubits, got {actual}")]
    WrongQubitCount { expected: usize, actual: usize },

    #[error("antidiagonal profile is identically zero; no maximizer is distinguished")]
    DegenerateProfile,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("evaluation budget exceeded: {needed} evaluations requested, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON state: {0}")]
    Json(#[from] serde_json::Error),
}
