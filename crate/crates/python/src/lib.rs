//! Python bindings. Reports are returned as plain dicts decoded from the same
//! JSON the command-line tool prints, so both front ends agree field for field.

use canon::descriptor::parse_system;
use canon::dirichlet::{verify as verify_dirichlet, BoundaryData, Grid};
use canon::energy::{construct_energy_matrix as construct_energy, euler_lagrange_system};
use canon::expr::{parse_boundary_expr, Expr};
use canon::report::{to_json, Classification};
use canon::system::{characteristic_quartic, from_canonical_params, from_complex_equation, is_elliptic};
use canon::{ComplexEquation, ComplexScalar, Error, Mat2, SystemSpec, DEFAULT_TOL};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(elliptic_canon, EllipticCanonError, PyException);
create_exception!(elliptic_canon, NotEllipticError, EllipticCanonError);
create_exception!(elliptic_canon, SolverError, EllipticCanonError);

fn to_py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::NotElliptic => NotEllipticError::new_err(msg),
        Error::SolverDiverged { .. } | Error::MaxIterations { .. } | Error::IndefiniteEnergy => SolverError::new_err(msg),
        Error::InternalInconsistency(_) | Error::PoleHit => EllipticCanonError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (to_json(value),))
}

type Rows = [[f64; 2]; 2];

/// Constant-coefficient system `A f_xx + 2B f_xy + C f_yy = 0` for `f = (u, v)`.
#[pyclass(name = "System", frozen)]
struct PySystem {
    inner: SystemSpec,
}

#[pymethods]
impl PySystem {
    #[new]
    fn new(a: Rows, b: Rows, c: Rows) -> PyResult<Self> {
        let inner = SystemSpec::new(Mat2(a), Mat2(b), Mat2(c)).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn laplace() -> Self {
        Self { inner: SystemSpec::laplace() }
    }

    /// System of `a f_xx + 2b f_xy + c f_yy = 0` for complex `a, b, c`.
    #[staticmethod]
    fn from_complex(a: ComplexScalar, b: ComplexScalar, c: ComplexScalar) -> PyResult<Self> {
        let eq = ComplexEquation::new(a, b, c).map_err(to_py_err)?;
        Ok(Self { inner: from_complex_equation(&eq) })
    }

    #[staticmethod]
    fn from_canonical(tau: f64, sigma: f64) -> PyResult<Self> {
        Ok(Self { inner: from_canonical_params(tau, sigma).map_err(to_py_err)? })
    }

    /// Parses a JSON descriptor (`matrices`, `complex` or `canonical`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_system(text).map_err(to_py_err)? })
    }

    #[getter]
    fn a(&self) -> Rows {
        self.inner.a.0
    }

    #[getter]
    fn b(&self) -> Rows {
        self.inner.b.0
    }

    #[getter]
    fn c(&self) -> Rows {
        self.inner.c.0
    }

    /// Coefficients of `det(Aλ² + 2Bλ + C)`, highest degree first.
    fn characteristic_quartic(&self) -> [f64; 5] {
        characteristic_quartic(&self.inner).coeffs
    }

    #[pyo3(signature = (tol = DEFAULT_TOL))]
    fn is_elliptic(&self, tol: f64) -> bool {
        is_elliptic(&self.inner, tol)
    }

    fn __repr__(&self) -> String {
        format!("System(A={:?}, B={:?}, C={:?})", self.inner.a.0, self.inner.b.0, self.inner.c.0)
    }
}

#[pyfunction]
#[pyo3(signature = (system, tol = DEFAULT_TOL))]
fn classify<'py>(py: Python<'py>, system: &PySystem, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let report = canon::canonicalize(&system.inner, tol).map_err(to_py_err)?;
    to_dict(py, &Classification::new(&system.inner, &report))
}

#[pyfunction]
#[pyo3(signature = (system, tol = DEFAULT_TOL))]
fn canonicalize<'py>(py: Python<'py>, system: &PySystem, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &canon::canonicalize(&system.inner, tol).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (system, tol = DEFAULT_TOL))]
fn energy_decision<'py>(py: Python<'py>, system: &PySystem, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &canon::energy_decision(&system.inner, tol).map_err(to_py_err)?)
}

/// The 4×4 energy matrix for canonical parameters `0 <= tau < sigma < 1`.
#[pyfunction]
fn construct_energy_matrix(tau: f64, sigma: f64) -> PyResult<[[f64; 4]; 4]> {
    let e = construct_energy(tau, sigma).map_err(to_py_err)?;
    let (k, l, m) = e.blocks();
    let mut out = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = k.0[i][j];
            out[i][j + 2] = l.0[i][j];
            out[i + 2][j] = l.0[j][i];
            out[i + 2][j + 2] = m.0[i][j];
        }
    }
    Ok(out)
}

/// The Euler–Lagrange system of the energy for `(tau, sigma)`.
#[pyfunction]
fn euler_lagrange(tau: f64, sigma: f64) -> PyResult<PySystem> {
    let e = construct_energy(tau, sigma).map_err(to_py_err)?;
    Ok(PySystem { inner: euler_lagrange_system(&e) })
}

/// Parsed boundary expression over `x`, `y`.
#[pyclass(name = "BoundaryExpr", frozen)]
struct PyBoundaryExpr {
    expr: Expr,
}

#[pymethods]
impl PyBoundaryExpr {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        let expr = parse_boundary_expr(src).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { expr })
    }

    fn __call__(&self, x: f64, y: f64) -> PyResult<f64> {
        self.expr.eval(x, y).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// Direct Dirichlet solve on the unit square plus, when an energy exists,
/// the minimizer/direct consistency check. Returns `(report, u, v)` with `u`
/// and `v` as `(n+2) × (n+2)` nested lists indexed `[j][i]`.
#[pyfunction]
#[pyo3(signature = (system, bc_u, bc_v, n, tol = DEFAULT_TOL))]
fn verify<'py>(
    py: Python<'py>,
    system: &PySystem,
    bc_u: &str,
    bc_v: &str,
    n: usize,
    tol: f64,
) -> PyResult<(Bound<'py, PyAny>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let parse = |src: &str| parse_boundary_expr(src).map_err(|e| PyValueError::new_err(format!("{src:?}: {e}")));
    let (u, v) = (parse(bc_u)?, parse(bc_v)?);
    let grid = Grid::new(n).map_err(to_py_err)?;
    let spec = system.inner;
    let (report, field) = py
        .detach(move || {
            let bc = BoundaryData::new(|x, y| [u.eval(x, y).unwrap_or(f64::NAN), v.eval(x, y).unwrap_or(f64::NAN)])?;
            verify_dirichlet(&spec, grid, &bc, tol)
        })
        .map_err(to_py_err)?;
    let rows = |data: &[f64]| data.chunks(grid.side()).map(<[f64]>::to_vec).collect();
    Ok((to_dict(py, &report)?, rows(&field.u), rows(&field.v)))
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn selftest(py: Python<'_>, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let report = py.detach(|| canon::selftest::run_selftest(seed));
    to_dict(py, &report)
}

#[pymodule]
fn elliptic_canon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PySystem>()?;
    m.add_class::<PyBoundaryExpr>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(energy_decision, m)?)?;
    m.add_function(wrap_pyfunction!(construct_energy_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(euler_lagrange, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("EllipticCanonError", py.get_type::<EllipticCanonError>())?;
    m.add("NotEllipticError", py.get_type::<NotEllipticError>())?;
    m.add("SolverError", py.get_type::<SolverError>())?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    Ok(())
}
