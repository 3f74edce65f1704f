use thiserror::Error;

use crate::signals::ValidationReport;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix must have positive dimensions, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {actual}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },

    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{op}: matrix is not square ({rows}x{cols})")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not Hermitian: max |h - h^dagger| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("state is not normalized: norm = {norm}")]
    Unnormalized { norm: f64 },

    #[error("state has no amplitudes")]
    EmptyState,

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("ensemble probability {p} at member {index} is outside (0, 1]")]
    InvalidProbability { index: usize, p: f64 },

    #[error("ensemble probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(ValidationReport),

    #[error("Kraus set is empty")]
    EmptyKraus,

    #[error("closure relation violated: ||sum M^dagger M - I||_F = {deviation:e}")]
    ClosureViolated { deviation: f64 },

    #[error("matrix is not unitary: ||U^dagger U - I||_F = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("Kraus count {count} outside 1..={max}")]
    KrausCount { count: usize, max: usize },

    #[error("composite dimension {total} does not factor as {dim_a} x {dim_b}")]
    CompositeDims {
        total: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("unknown subsystem label {0:?}, expected \"A\" or \"B\"")]
    InvalidSubsystem(String),

    #[error("channel is not a single-unitary channel")]
    NotUnitaryChannel,

    #[error("outcome index {index} out of range ({count} outcomes)")]
    OutcomeIndex { index: usize, count: usize },

    #[error("zero-probability outcome; post-state undefined (outcome {index}, p = {probability:e})")]
    ZeroProbability { index: usize, probability: f64 },

    #[error("invalid projective measurement: {0}")]
    InvalidMeasurement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
