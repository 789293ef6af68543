//! Hermitian eigensolver: cyclic Jacobi with complex plane rotations.
//!
//! Each rotation annihilates one off-diagonal element `a[p][q]` by factoring
//! out its phase and applying the real Jacobi angle of Numerical Recipes
//! §11.1 to the magnitude. Deterministic and foolproof for the ≤ 64×64
//! Hermitian matrices this crate works with.

use super::{Complex64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tol;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted ascending and the matrix whose columns are the
/// matching orthonormal eigenvectors. `tol` bounds the reconstruction
/// residual `‖A·V − V·diag(λ)‖_max`; exceeding it is a numeric failure.
pub fn eig_hermitian(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let residual = a.hermiticity_residual();
    if residual > tol::HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            residual,
            tol: tol::HERMITICITY_TOL,
        });
    }

    let n = a.rows();
    // Kill the (≤ HERMITICITY_TOL) anti-Hermitian part before rotating.
    let mut w = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let sym = (a.get(i, j) + a.get(j, i).conj()) * Complex64::new(0.5, 0.0);
            w.set(i, j, sym);
        }
    }

    let mut v = ComplexMatrix::identity(n);
    // Entries below this can never push the off-diagonal norm above the
    // sweep threshold, so rotating on them is wasted work.
    let skip = tol::JACOBI_OFF_TOL / ((n * n) as f64).max(1.0);

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&w) <= tol::JACOBI_OFF_TOL {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, p, q, skip);
            }
        }
        sweeps += 1;
    }
    if !converged && off_diagonal_norm(&w) > tol::JACOBI_OFF_TOL {
        return Err(Error::EigNoConvergence {
            sweeps,
            off_norm: off_diagonal_norm(&w),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| w.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }

    let recon = reconstruction_residual(a, &eigenvalues, &vectors);
    if recon > tol {
        return Err(Error::EigResidual { residual: recon, tol });
    }

    Ok((eigenvalues, vectors))
}

/// One complex Jacobi rotation zeroing `w[p][q]`, accumulated into `v`.
fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let beta = w.get(p, q);
    let mag = beta.norm();
    if mag <= skip {
        return;
    }
    let phase = beta / Complex64::new(mag, 0.0);

    let alpha = w.get(p, p).re;
    let gamma = w.get(q, q).re;
    let theta = (gamma - alpha) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = w.rows();
    let cs = Complex64::new(c, 0.0);
    let s_phase = phase * Complex64::new(s, 0.0);
    let s_phase_conj = s_phase.conj();

    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let wjp = w.get(j, p);
        let wjq = w.get(j, q);
        let new_jp = cs * wjp - s_phase_conj * wjq;
        let new_jq = s_phase * wjp + cs * wjq;
        w.set(j, p, new_jp);
        w.set(p, j, new_jp.conj());
        w.set(j, q, new_jq);
        w.set(q, j, new_jq.conj());
    }
    let shift = t * mag;
    w.set(p, p, Complex64::new(alpha - shift, 0.0));
    w.set(q, q, Complex64::new(gamma + shift, 0.0));
    w.set(p, q, Complex64::new(0.0, 0.0));
    w.set(q, p, Complex64::new(0.0, 0.0));

    for j in 0..n {
        let vjp = v.get(j, p);
        let vjq = v.get(j, q);
        v.set(j, p, cs * vjp - s_phase_conj * vjq);
        v.set(j, q, s_phase * vjp + cs * vjq);
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn reconstruction_residual(a: &ComplexMatrix, eigenvalues: &[f64], vectors: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let av = a.matmul(vectors).expect("square times square");
    let mut worst = 0.0f64;
    for i in 0..n {
        for (j, &lambda) in eigenvalues.iter().enumerate() {
            let lhs = av.get(i, j);
            let rhs = vectors.get(i, j) * Complex64::new(lambda, 0.0);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}
