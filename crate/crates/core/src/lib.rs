//! Asymmetric 1→2 qubit cloning machine that broadcasts and disentangles a
//! two-qubit entangled state in a single evolution.
//!
//! The machine clones one or both qubits of an input state
//! `|χ⟩ = α|00⟩ + β|11⟩` with an asymmetry knob `p`. For `p` above a
//! computable threshold, one output branch stays entangled (a broadcast copy
//! of the input) while the other becomes separable (a disentangled copy whose
//! one-qubit marginals are shrunk versions of the input marginals).
//!
//! The crate is organized in layers:
//!
//! - [`numerics`] — dense complex matrices, Kronecker products, and a Jacobi
//!   eigensolver for Hermitian matrices up to 64×64.
//! - [`qstate`] — pure states and density matrices on qubit registers, with
//!   partial trace, partial transpose, the PPT separability test, negativity,
//!   Bell-basis weights, and fidelity.
//! - [`cloner`] — the cloning isometry, brute-force application to one or
//!   both qubits of the input, and the closed-form branch states as an
//!   independent analytic path.
//! - [`analysis`] — fidelity and scaling factors, the inseparability window
//!   in `α²`, threshold finding by bisection, regime classification, and
//!   parameter sweeps.
//! - [`cli`] — the `asymclone` command-line front end (`thresholds`,
//!   `report`, `sweep`, `verify`).
//!
//! Qubit 0 is the most significant bit of a computational-basis index, so
//! `kron(a, b)` puts `a` on the more significant qubits. All tolerances live
//! in [`tol`].

pub mod analysis;
pub mod cli;
pub mod cloner;
pub mod error;
pub mod numerics;
pub mod qstate;
pub mod tol;

pub use error::{Error, Result};
pub use numerics::{Complex64, ComplexMatrix};
pub use qstate::{DensityMatrix, EntangledInput, PureState, SeparabilityVerdict};
