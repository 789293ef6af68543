//! Qubit-register states and the entanglement toolkit.
//!
//! Convention used everywhere: qubit 0 is the most significant bit of the
//! computational-basis index, matching the left-to-right order of `kron`.

use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, Complex64, ComplexMatrix};
use crate::tol;

/// Normalized state vector over an ordered register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if amplitudes.len() != dim {
            return Err(Error::BadAmplitudeCount {
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        for (k, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: k, col: 0 });
            }
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > tol::NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_real(num_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            num_qubits,
            amplitudes.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidQubit {
                index,
                num_qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor: checks dimensions, Hermiticity, unit trace,
    /// and positive semidefiniteness (via the eigensolver).
    pub fn new(num_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::NotDensityMatrix {
                reason: format!(
                    "expected {dim}x{dim} for {num_qubits} qubits, got {}x{}",
                    matrix.rows(),
                    matrix.cols()
                ),
            });
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol::HERMITICITY_TOL {
            return Err(Error::NotDensityMatrix {
                reason: format!("Hermiticity residual {herm:.3e}"),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE_TOL || tr.im.abs() > tol::TRACE_TOL {
            return Err(Error::NotDensityMatrix {
                reason: format!("trace {} + {}i", tr.re, tr.im),
            });
        }
        let (eigs, _) = eig_hermitian(&matrix, tol::EIG_RECON_TOL)?;
        if eigs[0] < -tol::PSD_TOL {
            return Err(Error::NotDensityMatrix {
                reason: format!("negative eigenvalue {:.3e}", eigs[0]),
            });
        }
        Ok(Self { num_qubits, matrix })
    }

    /// Constructor for operations that preserve the invariants exactly
    /// (outer products of pure states, partial traces, closed-form branch
    /// states). Skips the eigensolve; shape and Hermiticity are still
    /// debug-checked.
    pub(crate) fn from_matrix_trusted(num_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1usize << num_qubits);
        debug_assert!(matrix.hermiticity_residual() <= tol::HERMITICITY_TOL);
        debug_assert!((matrix.trace().re - 1.0).abs() <= tol::TRACE_TOL);
        Self { num_qubits, matrix }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// The input state `α|00⟩ + β|11⟩` with real amplitudes, `β` derived from
/// `α` at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledInput {
    alpha: f64,
    beta: f64,
}

impl EntangledInput {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            alpha,
            beta: (1.0 - alpha * alpha).max(0.0).sqrt(),
        })
    }

    pub fn from_alpha_sq(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) || !alpha_sq.is_finite() {
            return Err(Error::OutOfRange {
                name: "alpha_sq",
                value: alpha_sq,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            alpha: alpha_sq.sqrt(),
            beta: (1.0 - alpha_sq).sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha * self.alpha
    }

    /// `α|00⟩ + β|11⟩` on two qubits.
    pub fn two_qubit_state(&self) -> PureState {
        PureState::from_real(2, &[self.alpha, 0.0, 0.0, self.beta]).expect("normalized by construction")
    }

    /// `α|0⟩ + β|1⟩` on one qubit.
    pub fn one_qubit_state(&self) -> PureState {
        PureState::from_real(1, &[self.alpha, self.beta]).expect("normalized by construction")
    }
}

/// Outcome of the Peres-Horodecki test on a two-qubit state. For 2×2
/// systems PPT is exact, so `separable` is definitive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityVerdict {
    pub min_pt_eigenvalue: f64,
    pub negativity: f64,
    pub separable: bool,
}

/// `|ψ⟩⟨ψ|` as a density matrix.
pub fn density_from_pure(psi: &PureState) -> Result<DensityMatrix> {
    let norm_sqr: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > tol::NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let matrix = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
    Ok(DensityMatrix::from_matrix_trusted(psi.num_qubits(), matrix))
}

#[inline]
fn bit(index: usize, qubit: usize, num_qubits: usize) -> usize {
    (index >> (num_qubits - 1 - qubit)) & 1
}

/// Reduced density matrix on the `keep` qubits, in their listed order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if keep.is_empty() {
        return Err(Error::EmptyKeepList);
    }
    let mut seen = vec![false; n];
    for &k in keep {
        if k >= n {
            return Err(Error::InvalidQubit {
                index: k,
                num_qubits: n,
            });
        }
        if seen[k] {
            return Err(Error::DuplicateQubit { index: k });
        }
        seen[k] = true;
    }
    let traced: Vec<usize> = (0..n).filter(|q| !seen[*q]).collect();

    let m = keep.len();
    let out_dim = 1usize << m;
    let traced_dim = 1usize << traced.len();

    // Rebuild a full register index from a kept-part index and a traced-part
    // assignment, honoring the msb-first bit convention.
    let full_index = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            let b = (kept_bits >> (m - 1 - pos)) & 1;
            idx |= b << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let b = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            idx |= b << (n - 1 - q);
        }
        idx
    };

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        for c in 0..out_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..traced_dim {
                acc += rho.matrix().get(full_index(r, t), full_index(c, t));
            }
            out.set(r, c, acc);
        }
    }
    Ok(DensityMatrix::from_matrix_trusted(m, out))
}

/// Transpose applied to one subsystem's indices only. The result is
/// Hermitian with unit trace but not necessarily positive, which is the
/// whole point of the Peres-Horodecki test.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.num_qubits(), subsystem)
}

/// Matrix-level partial transpose; works on any `2^n`-dimensional square
/// matrix, so it can be applied twice to check the involution.
pub fn partial_transpose_matrix(
    matrix: &ComplexMatrix,
    num_qubits: usize,
    subsystem: usize,
) -> Result<ComplexMatrix> {
    if subsystem >= num_qubits {
        return Err(Error::InvalidQubit {
            index: subsystem,
            num_qubits,
        });
    }
    let dim = 1usize << num_qubits;
    if matrix.rows() != dim || matrix.cols() != dim {
        return Err(Error::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    let shift = num_qubits - 1 - subsystem;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let bi = bit(i, subsystem, num_qubits);
            let bj = bit(j, subsystem, num_qubits);
            let ii = (i & !(1 << shift)) | (bj << shift);
            let jj = (j & !(1 << shift)) | (bi << shift);
            out.set(i, j, matrix.get(ii, jj));
        }
    }
    Ok(out)
}

/// Peres-Horodecki verdict for a two-qubit state.
pub fn separability_verdict(rho: &DensityMatrix) -> Result<SeparabilityVerdict> {
    if rho.num_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            actual: rho.num_qubits(),
        });
    }
    let pt = partial_transpose(rho, 1)?;
    let (eigs, _) = eig_hermitian(&pt, tol::EIG_RECON_TOL)?;
    let min_pt_eigenvalue = eigs[0];
    let negativity: f64 = eigs
        .iter()
        .filter(|&&lambda| lambda < -tol::PPT_TOL)
        .map(|&lambda| -lambda)
        .sum();
    Ok(SeparabilityVerdict {
        min_pt_eigenvalue,
        negativity,
        separable: min_pt_eigenvalue >= -tol::PPT_TOL,
    })
}

/// The four Bell states in the fixed order `Φ+, Φ-, Ψ+, Ψ-`.
pub fn bell_states() -> [PureState; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        PureState::from_real(2, &[h, 0.0, 0.0, h]).expect("normalized"),
        PureState::from_real(2, &[h, 0.0, 0.0, -h]).expect("normalized"),
        PureState::from_real(2, &[0.0, h, h, 0.0]).expect("normalized"),
        PureState::from_real(2, &[0.0, h, -h, 0.0]).expect("normalized"),
    ]
}

/// Diagonal weights `⟨B|ρ|B⟩` of a two-qubit state in the Bell basis,
/// ordered `(Φ+, Φ-, Ψ+, Ψ-)`. They sum to 1.
pub fn bell_weights(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.num_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            actual: rho.num_qubits(),
        });
    }
    let mut out = [0.0; 4];
    for (slot, state) in out.iter_mut().zip(bell_states().iter()) {
        *slot = expectation(state, rho)?;
    }
    Ok(out)
}

/// Fidelity `⟨ψ|ρ|ψ⟩` of a density matrix against a pure reference state.
pub fn fidelity_with_pure(psi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    if psi.num_qubits() != rho.num_qubits() {
        return Err(Error::WrongQubitCount {
            expected: psi.num_qubits(),
            actual: rho.num_qubits(),
        });
    }
    expectation(psi, rho)
}

fn expectation(psi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    let applied = rho.matrix().apply(psi.amplitudes())?;
    let value: Complex64 = psi
        .amplitudes()
        .iter()
        .zip(applied.iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    if value.im.abs() > tol::EQUALITY_TOL {
        return Err(Error::ImaginaryResidual {
            value: value.im,
            tol: tol::EQUALITY_TOL,
        });
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_phi_plus_dm() -> DensityMatrix {
        let [phi_plus, _, _, _] = bell_states();
        density_from_pure(&phi_plus).unwrap()
    }

    fn maximally_mixed_2q() -> DensityMatrix {
        DensityMatrix::new(2, ComplexMatrix::identity(4).scale_real(0.25)).unwrap()
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        let err = PureState::from_real(1, &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn pure_state_rejects_bad_length() {
        let err = PureState::from_real(2, &[1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::BadAmplitudeCount { expected: 4, actual: 2 }));
    }

    #[test]
    fn density_from_basis_state() {
        let rho = density_from_pure(&PureState::basis(1, 0).unwrap()).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(rho.matrix().approx_eq(&expected, 0.0));
    }

    #[test]
    fn density_from_bell_state() {
        let rho = bell_phi_plus_dm();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.5, 0.0, 0.0, 0.5, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.5, 0.0, 0.0, 0.5,
            ],
        )
        .unwrap();
        assert!(rho.matrix().approx_eq(&expected, 1e-15));
    }

    #[test]
    fn density_from_unbalanced_state() {
        // Hand expansion for α = 0.6, β = 0.8.
        let chi = EntangledInput::new(0.6).unwrap();
        let rho = density_from_pure(&chi.two_qubit_state()).unwrap();
        assert!((rho.matrix().get(0, 0).re - 0.36).abs() < 1e-15);
        assert!((rho.matrix().get(3, 3).re - 0.64).abs() < 1e-15);
        assert!((rho.matrix().get(0, 3).re - 0.48).abs() < 1e-15);
        assert!((rho.matrix().get(3, 0).re - 0.48).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_new_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::from_real(
            2,
            2,
            &[
                1.5, 0.0, //
                0.0, -0.5,
            ],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(1, m).unwrap_err(),
            Error::NotDensityMatrix { .. }
        ));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = bell_phi_plus_dm();
        let reduced = partial_trace(&rho, &[0]).unwrap();
        let expected = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(reduced.matrix().approx_eq(&expected, 1e-15));
    }

    #[test]
    fn partial_trace_keep_all_is_identity_op() {
        let rho = bell_phi_plus_dm();
        let same = partial_trace(&rho, &[0, 1]).unwrap();
        assert!(same.matrix().approx_eq(rho.matrix(), 0.0));
    }

    #[test]
    fn partial_trace_keep_order_permutes() {
        // ρ_A ⊗ ρ_B with keep = [1, 0] must come back as ρ_B ⊗ ρ_A.
        let rho_a = ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]).unwrap();
        let rho_b = ComplexMatrix::from_real(2, 2, &[0.2, 0.0, 0.0, 0.8]).unwrap();
        let joint = DensityMatrix::new(2, rho_a.kron(&rho_b)).unwrap();
        let swapped = partial_trace(&joint, &[1, 0]).unwrap();
        assert!(swapped.matrix().approx_eq(&rho_b.kron(&rho_a), 1e-14));
    }

    #[test]
    fn partial_trace_rejects_bad_keep_lists() {
        let rho = bell_phi_plus_dm();
        assert!(matches!(partial_trace(&rho, &[]).unwrap_err(), Error::EmptyKeepList));
        assert!(matches!(
            partial_trace(&rho, &[2]).unwrap_err(),
            Error::InvalidQubit { index: 2, .. }
        ));
        assert!(matches!(
            partial_trace(&rho, &[0, 0]).unwrap_err(),
            Error::DuplicateQubit { index: 0 }
        ));
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let rho = bell_phi_plus_dm();
        let reduced = partial_trace(&rho, &[1]).unwrap();
        assert!((reduced.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_product_state() {
        let rho_a = ComplexMatrix::from_real(2, 2, &[0.6, 0.2, 0.2, 0.4]).unwrap();
        let rho_b = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let joint = DensityMatrix::new(2, rho_a.kron(&rho_b)).unwrap();
        let pt = partial_transpose(&joint, 1).unwrap();
        assert!(pt.approx_eq(&rho_a.kron(&rho_b.transpose()), 1e-15));
        // Still a valid (separable) state after PT.
        let verdict = separability_verdict(&joint).unwrap();
        assert!(verdict.separable);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let rho = bell_phi_plus_dm();
        let pt = partial_transpose(&rho, 1).unwrap();
        let back = partial_transpose_matrix(&pt, 2, 1).unwrap();
        assert_eq!(&back, rho.matrix());
    }

    #[test]
    fn partial_transpose_keeps_diagonal() {
        let rho = bell_phi_plus_dm();
        let pt = partial_transpose(&rho, 0).unwrap();
        for i in 0..4 {
            assert_eq!(pt.get(i, i), rho.matrix().get(i, i));
        }
    }

    #[test]
    fn partial_transpose_rejects_bad_index() {
        let rho = bell_phi_plus_dm();
        assert!(matches!(
            partial_transpose(&rho, 2).unwrap_err(),
            Error::InvalidQubit { index: 2, .. }
        ));
    }

    #[test]
    fn bell_state_is_inseparable_with_negativity_half() {
        let verdict = separability_verdict(&bell_phi_plus_dm()).unwrap();
        assert!(!verdict.separable);
        assert!((verdict.min_pt_eigenvalue + 0.5).abs() < 1e-12);
        assert!((verdict.negativity - 0.5).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let verdict = separability_verdict(&maximally_mixed_2q()).unwrap();
        assert!(verdict.separable);
        assert_eq!(verdict.negativity, 0.0);
    }

    #[test]
    fn separability_rejects_wrong_qubit_count() {
        let rho = density_from_pure(&PureState::basis(1, 0).unwrap()).unwrap();
        assert!(matches!(
            separability_verdict(&rho).unwrap_err(),
            Error::WrongQubitCount { expected: 2, actual: 1 }
        ));
    }

    #[test]
    fn bell_weights_of_phi_plus() {
        let w = bell_weights(&bell_phi_plus_dm()).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-14);
        for &minor in &w[1..] {
            assert!(minor.abs() < 1e-14);
        }
    }

    #[test]
    fn bell_weights_sum_to_one() {
        let w = bell_weights(&maximally_mixed_2q()).unwrap();
        let sum: f64 = w.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        for &weight in &w {
            assert!((weight - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn fidelity_of_state_with_itself() {
        let [phi_plus, _, _, _] = bell_states();
        let rho = density_from_pure(&phi_plus).unwrap();
        assert!((fidelity_with_pure(&phi_plus, &rho).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fidelity_of_bell_with_maximally_mixed() {
        let [phi_plus, _, _, _] = bell_states();
        let f = fidelity_with_pure(&phi_plus, &maximally_mixed_2q()).unwrap();
        assert!((f - 0.25).abs() < 1e-14);
    }

    #[test]
    fn fidelity_rejects_dimension_mismatch() {
        let psi = PureState::basis(1, 0).unwrap();
        let rho = maximally_mixed_2q();
        assert!(matches!(
            fidelity_with_pure(&psi, &rho).unwrap_err(),
            Error::WrongQubitCount { .. }
        ));
    }

    #[test]
    fn entangled_input_construction() {
        let chi = EntangledInput::from_alpha_sq(0.5).unwrap();
        assert!((chi.alpha() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((chi.alpha() * chi.alpha() + chi.beta() * chi.beta() - 1.0).abs() < 1e-12);
        assert!(EntangledInput::new(1.5).is_err());
        assert!(EntangledInput::from_alpha_sq(-0.1).is_err());
    }
}
