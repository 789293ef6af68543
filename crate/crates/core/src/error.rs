//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("entry length {actual} does not match {rows}x{cols}")]
    BadEntryCount { rows: usize, cols: usize, actual: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("eigendecomposition residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    EigResidual { residual: f64, tol: f64 },

    #[error("state vector is not normalized: |Σ|a|² − 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("amplitude vector has length {actual}, expected {expected}")]
    BadAmplitudeCount { expected: usize, actual: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    InvalidQubit { index: usize, num_qubits: usize },

    #[error("duplicate qubit index {index}")]
    DuplicateQubit { index: usize },

    #[error("keep list must not be empty")]
    EmptyKeepList,

    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    WrongQubitCount { expected: usize, actual: usize },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },

    #[error("imaginary residual {value:.3e} exceeds {tol:.3e}")]
    ImaginaryResidual { value: f64, tol: f64 },

    #[error("alpha window undefined at p = 0")]
    AlphaWindowUndefined,

    #[error("bisection bracket invalid: {reason}")]
    BisectionBracket { reason: String },

    #[error("parameter grid must not be empty")]
    EmptyGrid,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
