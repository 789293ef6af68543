//! Python bindings for the asymmetric cloning machine.
//!
//! Build with `cargo build -p asymclone-py --release` and import the
//! produced shared library as `pyasymclone` (see `python/smoke_test.py`).

use num_complex::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use asymclone::analysis::{self, Mode};
use asymclone::cloner;
use asymclone::qstate;
use asymclone::{Complex64, ComplexMatrix};

fn to_py_err(err: asymclone::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse::<Mode>().map_err(PyValueError::new_err)
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex<f64>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

/// The machine's asymmetry knob `p` with its derived quantities.
#[pyclass(name = "ClonerParams", frozen)]
struct PyClonerParams {
    inner: cloner::ClonerParams,
}

#[pymethods]
impl PyClonerParams {
    #[new]
    fn new(p: f64) -> PyResult<Self> {
        Ok(Self {
            inner: cloner::ClonerParams::new(p).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q()
    }

    #[getter]
    fn n_factor(&self) -> f64 {
        self.inner.n_factor()
    }

    #[getter]
    fn eta_a(&self) -> f64 {
        self.inner.eta_a()
    }

    #[getter]
    fn eta_b(&self) -> f64 {
        self.inner.eta_b()
    }

    fn no_cloning_residual(&self) -> f64 {
        self.inner.no_cloning_residual()
    }

    /// Depolarizing probabilities `(P, P')` of the two one-side copies.
    fn depolarizing_probs(&self) -> (f64, f64) {
        cloner::depolarizing_probs(&self.inner)
    }

    /// The 8x2 cloning isometry as nested lists, basis order `(a, b, c)`.
    fn isometry(&self) -> Vec<Vec<Complex<f64>>> {
        matrix_to_rows(&cloner::cloner_isometry(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("ClonerParams(p={})", self.inner.p())
    }
}

/// The input state `alpha|00> + beta|11>` with real amplitudes.
#[pyclass(name = "EntangledInput", frozen)]
struct PyEntangledInput {
    inner: qstate::EntangledInput,
}

#[pymethods]
impl PyEntangledInput {
    #[new]
    fn new(alpha: f64) -> PyResult<Self> {
        Ok(Self {
            inner: qstate::EntangledInput::new(alpha).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_alpha_sq(alpha_sq: f64) -> PyResult<Self> {
        Ok(Self {
            inner: qstate::EntangledInput::from_alpha_sq(alpha_sq).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    #[getter]
    fn alpha_sq(&self) -> f64 {
        self.inner.alpha_sq()
    }

    fn __repr__(&self) -> String {
        format!("EntangledInput(alpha={})", self.inner.alpha())
    }
}

/// Outcome of the Peres-Horodecki test on a two-qubit state.
#[pyclass(name = "SeparabilityVerdict", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeparabilityVerdict {
    #[pyo3(get)]
    min_pt_eigenvalue: f64,
    #[pyo3(get)]
    negativity: f64,
    #[pyo3(get)]
    separable: bool,
}

impl From<qstate::SeparabilityVerdict> for PySeparabilityVerdict {
    fn from(v: qstate::SeparabilityVerdict) -> Self {
        Self {
            min_pt_eigenvalue: v.min_pt_eigenvalue,
            negativity: v.negativity,
            separable: v.separable,
        }
    }
}

#[pymethods]
impl PySeparabilityVerdict {
    fn __repr__(&self) -> String {
        format!(
            "SeparabilityVerdict(separable={}, min_pt_eigenvalue={}, negativity={})",
            self.separable, self.min_pt_eigenvalue, self.negativity
        )
    }
}

/// A density matrix on a qubit register, validated at construction.
#[pyclass(name = "DensityMatrix", frozen)]
struct PyDensityMatrix {
    inner: qstate::DensityMatrix,
}

impl From<qstate::DensityMatrix> for PyDensityMatrix {
    fn from(inner: qstate::DensityMatrix) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyDensityMatrix {
    /// Build from a square nested list whose dimension is a power of two.
    #[new]
    fn new(entries: Vec<Vec<Complex<f64>>>) -> PyResult<Self> {
        let dim = entries.len();
        if dim == 0 || !dim.is_power_of_two() || dim == 1 {
            return Err(PyValueError::new_err(format!(
                "dimension {dim} is not a power of two >= 2"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        let mut data: Vec<Complex64> = Vec::with_capacity(dim * dim);
        for row in &entries {
            if row.len() != dim {
                return Err(PyValueError::new_err("matrix must be square"));
            }
            data.extend(row.iter().copied());
        }
        let matrix = ComplexMatrix::new(dim, dim, data).map_err(to_py_err)?;
        Ok(Self {
            inner: qstate::DensityMatrix::new(num_qubits, matrix).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    fn entries(&self) -> Vec<Vec<Complex<f64>>> {
        matrix_to_rows(self.inner.matrix())
    }

    fn separability_verdict(&self) -> PyResult<PySeparabilityVerdict> {
        Ok(qstate::separability_verdict(&self.inner)
            .map_err(to_py_err)?
            .into())
    }

    /// Bell-basis weights `(phi+, phi-, psi+, psi-)`.
    fn bell_weights(&self) -> PyResult<Vec<f64>> {
        Ok(qstate::bell_weights(&self.inner).map_err(to_py_err)?.to_vec())
    }

    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(qstate::partial_trace(&self.inner, &keep)
            .map_err(to_py_err)?
            .into())
    }

    fn partial_transpose(&self, subsystem: usize) -> PyResult<Vec<Vec<Complex<f64>>>> {
        Ok(matrix_to_rows(
            &qstate::partial_transpose(&self.inner, subsystem).map_err(to_py_err)?,
        ))
    }

    /// Overlap `<psi|rho|psi>` with a pure state given by its amplitudes.
    fn fidelity_with(&self, amplitudes: Vec<Complex<f64>>) -> PyResult<f64> {
        let num_qubits = self.inner.num_qubits();
        let psi = qstate::PureState::new(num_qubits, amplitudes).map_err(to_py_err)?;
        qstate::fidelity_with_pure(&psi, &self.inner).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(num_qubits={})", self.inner.num_qubits())
    }
}

/// Everything the machine does at one `(p, alpha_sq)` point.
#[pyclass(name = "RegimeReport", frozen)]
struct PyRegimeReport {
    inner: analysis::RegimeReport,
}

#[pymethods]
impl PyRegimeReport {
    #[getter]
    fn mode(&self) -> String {
        self.inner.mode.to_string()
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn alpha_sq(&self) -> f64 {
        self.inner.alpha_sq
    }

    #[getter]
    fn fidelity(&self) -> f64 {
        self.inner.fidelity
    }

    #[getter]
    fn s_factor(&self) -> f64 {
        self.inner.s_factor()
    }

    #[getter]
    fn goal_met(&self) -> bool {
        self.inner.goal_met
    }

    #[getter]
    fn kept_verdict(&self) -> PySeparabilityVerdict {
        self.inner.kept_verdict.into()
    }

    #[getter]
    fn other_verdict(&self) -> PySeparabilityVerdict {
        self.inner.other_verdict.into()
    }

    fn __repr__(&self) -> String {
        format!(
            "RegimeReport(mode='{}', p={}, alpha_sq={}, goal_met={})",
            self.inner.mode, self.inner.p, self.inner.alpha_sq, self.inner.goal_met
        )
    }
}

/// The `alpha_sq` window where the two-side kept branch stays inseparable.
#[pyclass(name = "AlphaWindow", frozen)]
struct PyAlphaWindow {
    #[pyo3(get)]
    lower: f64,
    #[pyo3(get)]
    upper: f64,
    #[pyo3(get)]
    nonempty: bool,
}

#[pymethods]
impl PyAlphaWindow {
    fn contains(&self, alpha_sq: f64) -> bool {
        self.nonempty && alpha_sq > self.lower && alpha_sq < self.upper
    }

    fn __repr__(&self) -> String {
        format!(
            "AlphaWindow(lower={}, upper={}, nonempty={})",
            self.lower, self.upper, self.nonempty
        )
    }
}

/// Smallest `p` for which one-side cloning broadcasts while disentangling;
/// equals `sqrt(3) - 1`.
#[pyfunction]
fn find_threshold_one_side() -> PyResult<f64> {
    analysis::find_threshold_one_side().map_err(to_py_err)
}

/// Smallest `p` for which two-side cloning does the same; equals
/// `(1 - sqrt(3) + sqrt(2*sqrt(3)))/2`.
#[pyfunction]
fn find_threshold_two_side() -> PyResult<f64> {
    analysis::find_threshold_two_side().map_err(to_py_err)
}

/// Closed-form fidelity of the two-side kept branch.
#[pyfunction]
fn copy_fidelity(p: f64, alpha_sq: f64) -> PyResult<f64> {
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    let chi = qstate::EntangledInput::from_alpha_sq(alpha_sq).map_err(to_py_err)?;
    Ok(analysis::copy_fidelity(&params, &chi))
}

#[pyfunction]
fn scaling_factor_one_side(p: f64) -> PyResult<f64> {
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    Ok(analysis::scaling_factor_one_side(&params))
}

#[pyfunction]
fn scaling_factors_two_side(p: f64) -> PyResult<(f64, f64)> {
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    let s = analysis::scaling_factors_two_side(&params);
    Ok((s.s_b1, s.s_b2))
}

#[pyfunction]
fn alpha_window(p: f64) -> PyResult<PyAlphaWindow> {
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    let w = analysis::alpha_window(&params).map_err(to_py_err)?;
    Ok(PyAlphaWindow {
        lower: w.lower,
        upper: w.upper,
        nonempty: w.nonempty,
    })
}

/// Classify one `(p, alpha_sq)` point; `mode` is "one-side" or "two-side".
#[pyfunction]
fn classify_regime(p: f64, alpha_sq: f64, mode: &str) -> PyResult<PyRegimeReport> {
    let mode = parse_mode(mode)?;
    Ok(PyRegimeReport {
        inner: analysis::classify_regime(p, alpha_sq, mode).map_err(to_py_err)?,
    })
}

/// Classify every grid cell, row-major with `p` outer.
#[pyfunction]
fn sweep(mode: &str, p_grid: Vec<f64>, alpha_sq_grid: Vec<f64>) -> PyResult<Vec<PyRegimeReport>> {
    let mode = parse_mode(mode)?;
    let rows = analysis::sweep(mode, &p_grid, &alpha_sq_grid).map_err(to_py_err)?;
    Ok(rows
        .into_iter()
        .map(|inner| PyRegimeReport { inner })
        .collect())
}

/// Closed-form branch states `(kept, other)` for the chosen mode.
#[pyfunction]
fn analytic_branches(mode: &str, p: f64, alpha_sq: f64) -> PyResult<(PyDensityMatrix, PyDensityMatrix)> {
    let mode = parse_mode(mode)?;
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    let chi = qstate::EntangledInput::from_alpha_sq(alpha_sq).map_err(to_py_err)?;
    let (kept, other) = match mode {
        Mode::OneSide => cloner::analytic_branches_one_side(&params, &chi),
        Mode::TwoSide => cloner::analytic_branches_both_sides(&params, &chi),
    };
    Ok((kept.into(), other.into()))
}

/// Brute-force branch states `(kept, other)`: apply the isometry to the
/// full register and trace out the rest.
#[pyfunction]
fn simulate_branches(mode: &str, p: f64, alpha_sq: f64) -> PyResult<(PyDensityMatrix, PyDensityMatrix)> {
    let mode = parse_mode(mode)?;
    let params = cloner::ClonerParams::new(p).map_err(to_py_err)?;
    let chi = qstate::EntangledInput::from_alpha_sq(alpha_sq).map_err(to_py_err)?;
    let out = match mode {
        Mode::OneSide => cloner::clone_one_side(&chi, &params),
        Mode::TwoSide => cloner::clone_both_sides(&chi, &params),
    }
    .map_err(to_py_err)?;
    Ok((out.branch_kept.into(), out.branch_other.into()))
}

#[pymodule]
fn pyasymclone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClonerParams>()?;
    m.add_class::<PyEntangledInput>()?;
    m.add_class::<PySeparabilityVerdict>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyRegimeReport>()?;
    m.add_class::<PyAlphaWindow>()?;
    m.add_function(wrap_pyfunction!(find_threshold_one_side, m)?)?;
    m.add_function(wrap_pyfunction!(find_threshold_two_side, m)?)?;
    m.add_function(wrap_pyfunction!(copy_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_factor_one_side, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_factors_two_side, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_window, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_branches, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_branches, m)?)?;
    Ok(())
}
