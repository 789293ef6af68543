//! Dense complex linear algebra for small matrices (≤ 64×64).
//!
//! Everything is row-major `Vec<Complex64>` behind a checked constructor;
//! no entry may be NaN or infinite. Operations are pure functions and safe
//! to call from multiple threads.

use num_complex::Complex;

use crate::error::{Error, Result};

pub mod eig;

pub use eig::eig_hermitian;

/// Complex scalar with `f64` components.
pub type Complex64 = Complex<f64>;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, rejecting bad lengths and
    /// non-finite components.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadEntryCount {
                rows,
                cols,
                actual: data.len(),
            });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let data = entries.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::new(rows, cols, data)
    }

    /// Square matrix with the given real diagonal.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Column vector from amplitudes.
    pub fn column(amps: &[Complex64]) -> Self {
        Self {
            rows: amps.len(),
            cols: 1,
            data: amps.to_vec(),
        }
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let rows = u.len();
        let cols = v.len();
        let mut data = Vec::with_capacity(rows * cols);
        for a in u {
            for b in v {
                data.push(a * b.conj());
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Apply the matrix to a vector of length `cols`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "apply",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let acc = v
                .iter()
                .enumerate()
                .map(|(j, &vj)| self.get(i, j) * vj)
                .sum();
            out.push(acc);
        }
        Ok(out)
    }

    /// Kronecker product; the left factor is the most significant block, so
    /// `kron(a, b)` indexes as `(i_a * b.rows + i_b, j_a * b.cols + j_b)`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise absolute difference; the tolerance-based equality
    /// used throughout the tests.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff on mismatched shapes"
        );
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= tol
    }

    /// `‖A − A†‖_max` over the lower triangle.
    pub fn hermiticity_residual(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.is_square() && self.hermiticity_residual() <= tolerance
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// 2×2 identity.
pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// Pauli X (bit flip).
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static entries")
}

/// Pauli Z (phase flip).
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn new_rejects_bad_length() {
        let err = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]).unwrap_err();
        assert!(matches!(err, Error::BadEntryCount { actual: 3, .. }));
    }

    #[test]
    fn new_rejects_non_finite() {
        let err = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteEntry { row: 0, col: 1 }));
    }

    #[test]
    fn matmul_identity_and_involution() {
        let x = pauli_x();
        let i2 = identity2();
        assert!(i2.matmul(&x).unwrap().approx_eq(&x, 0.0));
        assert!(x.matmul(&x).unwrap().approx_eq(&i2, 0.0));
    }

    #[test]
    fn matmul_rect_hand_expanded() {
        // Fixed 2x3 · 3x2 case expanded by hand before the build.
        let a = ComplexMatrix::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let b = ComplexMatrix::from_real(3, 2, &[7.0, 8.0, 9.0, 10.0, 11.0, 12.0]).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[58.0, 64.0, 139.0, 154.0]).unwrap();
        assert!(a.matmul(&b).unwrap().approx_eq(&expected, 0.0));
    }

    #[test]
    fn matmul_complex_hand_expanded() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, -1.0)])
            .unwrap();
        let b = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let expected =
            ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(1.0, -1.0), c(1.0, -1.0)])
                .unwrap();
        assert!(a.matmul(&b).unwrap().approx_eq(&expected, 1e-15));
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            a.matmul(&b).unwrap_err(),
            Error::DimensionMismatch { op: "matmul", .. }
        ));
    }

    #[test]
    fn kron_identities() {
        assert!(identity2()
            .kron(&identity2())
            .approx_eq(&ComplexMatrix::identity(4), 0.0));

        // |0⟩ ⊗ |1⟩ = |01⟩ = (0, 1, 0, 0)ᵀ under the msb-first convention.
        let ket0 = ComplexMatrix::from_real(2, 1, &[1.0, 0.0]).unwrap();
        let ket1 = ComplexMatrix::from_real(2, 1, &[0.0, 1.0]).unwrap();
        let ket01 = ket0.kron(&ket1);
        let expected = ComplexMatrix::from_real(4, 1, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(ket01.approx_eq(&expected, 0.0));
    }

    #[test]
    fn kron_xz_on_00() {
        // (X⊗Z)|00⟩ = |10⟩ with sign +1.
        let xz = pauli_x().kron(&pauli_z());
        let ket00 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let out = xz.apply(&ket00).unwrap();
        assert_eq!(out[2], c(1.0, 0.0));
        for (k, z) in out.iter().enumerate() {
            if k != 2 {
                assert_eq!(*z, c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn kron_associative_exact() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0), c(3.0, 0.0)])
            .unwrap();
        let b = pauli_x();
        let z = pauli_z();
        let left = a.kron(&b).kron(&z);
        let right = a.kron(&b.kron(&z));
        assert_eq!(left, right);
    }

    #[test]
    fn dagger_of_column_is_conjugated_row() {
        let v = ComplexMatrix::column(&[c(1.0, 2.0), c(0.0, -3.0)]);
        let d = v.dagger();
        assert_eq!(d.rows(), 1);
        assert_eq!(d.cols(), 2);
        assert_eq!(d.get(0, 0), c(1.0, -2.0));
        assert_eq!(d.get(0, 1), c(0.0, 3.0));
    }

    #[test]
    fn dagger_involution_exact() {
        let a = ComplexMatrix::new(
            2,
            3,
            vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 1.0), c(3.0, -4.0), c(0.1, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn trace_cyclic() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, 3.0), c(4.0, 0.0)])
            .unwrap();
        let b = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(1.0, 0.0), c(2.0, 2.0), c(0.0, 0.0)])
            .unwrap();
        let ab = a.matmul(&b).unwrap().trace();
        let ba = b.matmul(&a).unwrap().trace();
        assert!((ab - ba).norm() < 1e-12);
    }
}
