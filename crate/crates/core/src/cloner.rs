//! The asymmetric 1→2 cloning machine.
//!
//! The machine is an 8×2 isometry taking one qubit `a` into the register
//! `(a, b, c)`, where `b` receives the second copy and `c` is the cloner
//! ancilla. Column `k` is the image of `|k⟩_a`:
//!
//! ```text
//! |0⟩ → (|000⟩ + p|011⟩ + q|101⟩) / √N
//! |1⟩ → (|111⟩ + p|100⟩ + q|010⟩) / √N
//! ```
//!
//! with `q = 1 − p` and `N = 1 + p² + q²`. Applying it to one or both
//! qubits of `α|00⟩ + β|11⟩` and tracing out parts of the register gives
//! the branch states; the same branches are also built directly from their
//! closed-form coefficients so the two routes can be checked against each
//! other.

use crate::error::{Error, Result};
use crate::numerics::{Complex64, ComplexMatrix};
use crate::qstate::{
    density_from_pure, partial_trace, DensityMatrix, EntangledInput, PureState,
};

/// The machine's knob `p` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClonerParams {
    p: f64,
    q: f64,
    n_factor: f64,
    eta_a: f64,
    eta_b: f64,
}

impl ClonerParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                min: 0.0,
                max: 1.0,
            });
        }
        let q = 1.0 - p;
        let n_factor = 1.0 + p * p + q * q;
        Ok(Self {
            p,
            q,
            n_factor,
            eta_a: 2.0 * p / n_factor,
            eta_b: 2.0 * q / n_factor,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Normalization factor `N = 1 + p² + q²`.
    pub fn n_factor(&self) -> f64 {
        self.n_factor
    }

    /// Bloch-vector reduction factor of the kept copy, `2p/N`.
    pub fn eta_a(&self) -> f64 {
        self.eta_a
    }

    /// Bloch-vector reduction factor of the second copy, `2q/N`.
    pub fn eta_b(&self) -> f64 {
        self.eta_b
    }

    /// Residual of the no-cloning identity
    /// `η_a² + η_b² + η_a·η_b − η_a − η_b = 0`; zero for every valid `p`.
    pub fn no_cloning_residual(&self) -> f64 {
        let (a, b) = (self.eta_a, self.eta_b);
        a * a + b * b + a * b - a - b
    }
}

/// Result of cloning one or both qubits of the input state.
#[derive(Debug, Clone)]
pub struct CloneOutput {
    /// The full register after the isometry. One-side cloning leaves four
    /// qubits ordered `(a_I, a_II, b_II, c)`; two-side cloning leaves six,
    /// ordered `(a_I, b_I, c_I, a_II, b_II, c_II)`.
    pub global_pure: PureState,
    /// The branch holding the kept copies: `(a_I, a_II)`.
    pub branch_kept: DensityMatrix,
    /// The other branch: `(a_I, b_II)` for one-side, `(b_I, b_II)` for
    /// two-side cloning.
    pub branch_other: DensityMatrix,
}

/// The 8×2 cloning isometry in the basis ordering `(a, b, c)`.
/// Satisfies `V†V = I₂` for every `p`.
pub fn cloner_isometry(params: &ClonerParams) -> ComplexMatrix {
    let root_n = params.n_factor().sqrt();
    let mut v = ComplexMatrix::zeros(8, 2);
    let entry = |x: f64| Complex64::new(x / root_n, 0.0);
    // |0⟩ → (|000⟩ + p|011⟩ + q|101⟩)/√N
    v.set(0b000, 0, entry(1.0));
    v.set(0b011, 0, entry(params.p()));
    v.set(0b101, 0, entry(params.q()));
    // |1⟩ → (|111⟩ + p|100⟩ + q|010⟩)/√N
    v.set(0b111, 1, entry(1.0));
    v.set(0b100, 1, entry(params.p()));
    v.set(0b010, 1, entry(params.q()));
    v
}

/// Clone a single qubit `|φ⟩` and return the reduced states of the two
/// copies, `(ρ_a, ρ_b)`, computed by applying the isometry and tracing out
/// the rest of the register. They equal the shrink forms
/// `η·|φ⟩⟨φ| + (1−η)·I/2`.
pub fn single_qubit_outputs(
    params: &ClonerParams,
    phi: &PureState,
) -> Result<(DensityMatrix, DensityMatrix)> {
    if phi.num_qubits() != 1 {
        return Err(Error::WrongQubitCount {
            expected: 1,
            actual: phi.num_qubits(),
        });
    }
    let v = cloner_isometry(params);
    let global = PureState::new(3, v.apply(phi.amplitudes())?)?;
    let rho = density_from_pure(&global)?;
    Ok((partial_trace(&rho, &[0])?, partial_trace(&rho, &[1])?))
}

/// Clone qubit `a_II` of `|χ⟩ = α|00⟩ + β|11⟩`, splitting the state into
/// the kept branch `(a_I, a_II)` and the other branch `(a_I, b_II)`.
pub fn clone_one_side(chi: &EntangledInput, params: &ClonerParams) -> Result<CloneOutput> {
    let v = cloner_isometry(params);
    let op = ComplexMatrix::identity(2).kron(&v);
    let amps = op.apply(chi.two_qubit_state().amplitudes())?;
    let global_pure = PureState::new(4, amps)?;
    let rho = density_from_pure(&global_pure)?;
    let branch_kept = partial_trace(&rho, &[0, 1])?;
    let branch_other = partial_trace(&rho, &[0, 2])?;
    Ok(CloneOutput {
        global_pure,
        branch_kept,
        branch_other,
    })
}

/// Clone both qubits of `|χ⟩` separately with the same `p`, giving the
/// kept branch `(a_I, a_II)` and the other branch `(b_I, b_II)`.
pub fn clone_both_sides(chi: &EntangledInput, params: &ClonerParams) -> Result<CloneOutput> {
    let v = cloner_isometry(params);
    let op = v.kron(&v);
    let amps = op.apply(chi.two_qubit_state().amplitudes())?;
    let global_pure = PureState::new(6, amps)?;
    let rho = density_from_pure(&global_pure)?;
    let branch_kept = partial_trace(&rho, &[0, 3])?;
    let branch_other = partial_trace(&rho, &[1, 4])?;
    Ok(CloneOutput {
        global_pure,
        branch_kept,
        branch_other,
    })
}

/// Closed-form branch states of one-side cloning, `(ρ_kept, ρ_other)`.
///
/// The kept branch has diagonal `((1+p²)α², q²α², q²β², (1+p²)β²)/N` and
/// corner `2pαβ/N`; the other branch is the same pattern with `p` and `q`
/// exchanged.
pub fn analytic_branches_one_side(
    params: &ClonerParams,
    chi: &EntangledInput,
) -> (DensityMatrix, DensityMatrix) {
    let kept = x_state(
        (1.0 + params.p() * params.p()) / params.n_factor(),
        params.q() * params.q() / params.n_factor(),
        2.0 * params.p() / params.n_factor(),
        chi,
    );
    let other = x_state(
        (1.0 + params.q() * params.q()) / params.n_factor(),
        params.p() * params.p() / params.n_factor(),
        2.0 * params.q() / params.n_factor(),
        chi,
    );
    (kept, other)
}

/// Closed-form branch states of two-side cloning, `(ρ_kept, ρ_other)`.
pub fn analytic_branches_both_sides(
    params: &ClonerParams,
    chi: &EntangledInput,
) -> (DensityMatrix, DensityMatrix) {
    let (p, q, n) = (params.p(), params.q(), params.n_factor());
    let n_sq = n * n;
    let kept = x_state_full(
        ((1.0 + p * p).powi(2) * chi.alpha_sq() + q.powi(4) * (1.0 - chi.alpha_sq())) / n_sq,
        (1.0 + p * p) * q * q / n_sq,
        (1.0 + p * p) * q * q / n_sq,
        ((1.0 + p * p).powi(2) * (1.0 - chi.alpha_sq()) + q.powi(4) * chi.alpha_sq()) / n_sq,
        4.0 * p * p * chi.alpha() * chi.beta() / n_sq,
    );
    let other = x_state_full(
        ((1.0 + q * q).powi(2) * chi.alpha_sq() + p.powi(4) * (1.0 - chi.alpha_sq())) / n_sq,
        (1.0 + q * q) * p * p / n_sq,
        (1.0 + q * q) * p * p / n_sq,
        ((1.0 + q * q).powi(2) * (1.0 - chi.alpha_sq()) + p.powi(4) * chi.alpha_sq()) / n_sq,
        4.0 * q * q * chi.alpha() * chi.beta() / n_sq,
    );
    (kept, other)
}

/// Depolarizing-channel probabilities `(P, P′)` for the two copies of
/// one-side cloning: `P = 3(1−p)²/(2N)` and `P′ = 3p²/(2N)`.
pub fn depolarizing_probs(params: &ClonerParams) -> (f64, f64) {
    let two_n = 2.0 * params.n_factor();
    (
        3.0 * params.q() * params.q() / two_n,
        3.0 * params.p() * params.p() / two_n,
    )
}

/// One-side branch pattern: diagonal `(w·α², m·α², m·β², w·β²)`, corner
/// `cross·αβ`.
fn x_state(w: f64, m: f64, cross: f64, chi: &EntangledInput) -> DensityMatrix {
    let a2 = chi.alpha_sq();
    let b2 = 1.0 - a2;
    x_state_full(w * a2, m * a2, m * b2, w * b2, cross * chi.alpha() * chi.beta())
}

fn x_state_full(d00: f64, d01: f64, d10: f64, d11: f64, corner: f64) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, Complex64::new(d00, 0.0));
    m.set(1, 1, Complex64::new(d01, 0.0));
    m.set(2, 2, Complex64::new(d10, 0.0));
    m.set(3, 3, Complex64::new(d11, 0.0));
    m.set(0, 3, Complex64::new(corner, 0.0));
    m.set(3, 0, Complex64::new(corner, 0.0));
    DensityMatrix::from_matrix_trusted(2, m)
}
