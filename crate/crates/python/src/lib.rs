// SPDX-License-Identifier: Apache-2.0

//! Python bindings for the `chatelet` engine.

use chatelet::count::{self, HeightMode, DEFAULT_BUDGET, DEFAULT_ORACLE_BUDGET};
use chatelet::{arith, ChateletSurface, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

create_exception!(pychatelet, HypothesisError, PyValueError);
create_exception!(pychatelet, RegimeError, PyValueError);
create_exception!(pychatelet, BudgetError, pyo3::exceptions::PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Hypothesis(_) | Error::Reducible(_) => HypothesisError::new_err(msg),
        Error::UnsupportedRegime(_) => RegimeError::new_err(msg),
        Error::BudgetExceeded { .. } => BudgetError::new_err(msg),
        Error::Overflow(_) => PyOverflowError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

/// y^2 - a z^2 = f(x), with f given by five coefficients, highest degree first.
#[pyclass(name = "Surface", module = "pychatelet", frozen)]
struct PySurface {
    inner: ChateletSurface,
}

#[pymethods]
impl PySurface {
    #[new]
    #[pyo3(signature = (a, f, label=None))]
    fn new(a: i64, f: [i64; 5], label: Option<String>) -> PyResult<Self> {
        let mut inner = ChateletSurface::validate(a, f).map_err(to_py)?;
        if let Some(l) = label {
            inner = inner.with_label(l);
        }
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner: ChateletSurface::from_spec(&spec).map_err(to_py)? })
    }

    #[getter]
    fn a(&self) -> i64 {
        self.inner.a()
    }

    #[getter]
    fn f(&self) -> [i64; 5] {
        self.inner.spec().f
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.inner.label().map(str::to_owned)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn discriminant(&self) -> String {
        self.inner.discriminant().to_string()
    }

    fn factors(&self) -> Vec<(String, u32)> {
        self.inner.factorization().factors.iter().map(|(g, m)| (g.to_string(), *m)).collect()
    }

    fn picard_rank(&self) -> u32 {
        self.inner.picard_rank()
    }

    /// (N, T) for sup-norm height at most `bound`.
    #[pyo3(signature = (bound, budget=DEFAULT_BUDGET))]
    fn count(&self, py: Python<'_>, bound: u64, budget: u128) -> PyResult<(u64, u64)> {
        let c = py.detach(|| count::torsor_count_with_budget(&self.inner, bound, budget)).map_err(to_py)?;
        Ok((c.rational, c.torsor))
    }

    #[pyo3(signature = (grid, budget=DEFAULT_BUDGET))]
    fn counts(&self, py: Python<'_>, grid: Vec<u64>, budget: u128) -> PyResult<Vec<(u64, u64, u64)>> {
        let cs = py.detach(|| count::torsor_counts_on_grid(&self.inner, &grid, budget)).map_err(to_py)?;
        Ok(cs.into_iter().map(|c| (c.bound, c.rational, c.torsor)).collect())
    }

    /// Brute-force count on the quartic del Pezzo model.
    #[pyo3(signature = (bound, budget=DEFAULT_ORACLE_BUDGET))]
    fn oracle(&self, py: Python<'_>, bound: u64, budget: u128) -> PyResult<u64> {
        py.detach(|| count::oracle_count_with_budget(&self.inner, bound, budget)).map_err(to_py)
    }

    fn fiber_count(&self, u: i64, v: i64, bound: u64) -> PyResult<u64> {
        count::fiber_count(&self.inner, u, v, bound, HeightMode::FiberBox).map_err(to_py)
    }

    /// Torsor points as (y, z, t, u, v).
    fn points(&self, py: Python<'_>, bound: u64) -> PyResult<Vec<(i64, i64, i64, i64, i64)>> {
        let pts = py.detach(|| count::torsor_points(&self.inner, bound)).map_err(to_py)?;
        Ok(pts.into_iter().map(|p| (p.y, p.z, p.t, p.u, p.v)).collect())
    }

    /// Returns (theta numerator, theta denominator, locally solvable).
    fn isotropy(&self, u: i64, v: i64) -> PyResult<(u64, u64, bool)> {
        let iso = count::isotropy_filter(&self.inner, u, v).map_err(to_py)?;
        Ok((*iso.theta.numer(), *iso.theta.denom(), iso.locally_solvable))
    }

    fn sum_s(&self, py: Python<'_>, u: u64, v: u64) -> PyResult<u128> {
        py.detach(|| count::sum_s(&self.inner, u, v)).map_err(to_py)
    }

    fn euler_product(&self, py: Python<'_>, bound: u64) -> PyResult<f64> {
        let e = py.detach(|| count::euler_product(self.inner.f(), self.inner.a(), bound)).map_err(to_py)?;
        Ok(e.to_f64())
    }

    fn euler_product_by_factor(&self, py: Python<'_>, bound: u64) -> PyResult<Vec<(String, f64)>> {
        let es = py.detach(|| count::euler_product_by_factor(&self.inner, bound)).map_err(to_py)?;
        Ok(es.into_iter().map(|(g, e)| (g.to_string(), e.to_f64())).collect())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Surface(a={}, f={:?})", self.inner.a(), self.inner.spec().f)
    }
}

#[pyfunction]
fn jacobi(a: i128, n: i128) -> PyResult<i8> {
    arith::jacobi(a, n).map_err(to_py)
}

/// Hilbert symbol at a prime `p`, or at the real place when `p` is None.
#[pyfunction]
#[pyo3(signature = (a, b, p=None))]
fn hilbert_symbol(a: i128, b: i128, p: Option<u64>) -> PyResult<i8> {
    let place = match p {
        None => arith::Place::Infinity,
        Some(p) if arith::is_prime(p) => arith::Place::Prime(p),
        Some(p) => return Err(PyValueError::new_err(format!("{p} is not prime"))),
    };
    arith::hilbert_symbol(a, b, place).map_err(to_py)
}

#[pyfunction]
fn theta(n: i128, a: i64) -> (u64, u64) {
    let t = arith::theta_of(n, a);
    (*t.numer(), *t.denom())
}

#[pyfunction]
fn varpi(n: i128, a: i64) -> u64 {
    arith::varpi_of(n, a)
}

#[pyfunction]
fn factorize(n: i128) -> PyResult<Vec<(u64, u32)>> {
    Ok(arith::factorize(n).map_err(to_py)?.factors().to_vec())
}

#[pymodule]
fn pychatelet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySurface>()?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("RegimeError", m.py().get_type::<RegimeError>())?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(varpi, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    Ok(())
}
