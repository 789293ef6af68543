//! Centralized numeric tolerances.
//!
//! Every module compares against these constants instead of inlining magic
//! numbers, so the acceptance thresholds have a single source of truth.

/// Max-abs residual `‖A − A†‖_max` below which a matrix counts as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Default bound on the eigendecomposition residual `‖AV − V·diag(λ)‖_max`.
pub const EIG_RECON_TOL: f64 = 1e-9;

/// General entrywise equality tolerance for exact algebraic identities.
pub const EQUALITY_TOL: f64 = 1e-12;

/// Partial-transpose eigenvalues in `(-PPT_TOL, 0)` count as zero, so states
/// on the separability boundary classify as separable.
pub const PPT_TOL: f64 = 1e-10;

/// Allowed deviation of `Σ|amplitude|²` from 1 for a pure state.
pub const NORM_TOL: f64 = 1e-12;

/// Allowed deviation of the trace of a density matrix from 1.
pub const TRACE_TOL: f64 = 1e-10;

/// Density-matrix eigenvalues must be `≥ -PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;

/// Jacobi eigensolver: maximum number of full sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Jacobi eigensolver: off-diagonal Frobenius norm at which a sweep stops.
pub const JACOBI_OFF_TOL: f64 = 1e-13;

/// Bisection: maximum iterations before giving up.
pub const BISECT_MAX_ITERS: usize = 200;

/// Bisection: bracket width at which iteration stops.
pub const BISECT_WIDTH_TOL: f64 = 1e-12;
