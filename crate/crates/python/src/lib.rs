//! Python bindings. Reports come back as plain dicts and lists with the same
//! layout as the CLI's JSON output; rationals are strings such as `"-1/2"`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use symdeg_core::bounds;
use symdeg_core::dual;
use symdeg_core::quadric::{self, BettiVector};
use symdeg_core::sample::SampleConfig;
use symdeg_core::{build_hessian, infer_vars, parse_poly, Error, MultiPoly, PointQ};

fn err(e: Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any().unbind(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn report<T: serde::Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn poly(text: &str, vars: Option<Vec<String>>) -> PyResult<(MultiPoly, Vec<String>)> {
    let vars = vars.unwrap_or_else(|| infer_vars(text));
    let f = parse_poly(text, &vars).map_err(err)?;
    Ok((f, vars))
}

/// Accepts ints, `Fraction`s or strings like `"1/2"`, through `str()`.
fn point(coords: &Bound<'_, PyAny>) -> PyResult<PointQ> {
    if let Ok(s) = coords.extract::<String>() {
        return PointQ::parse(&s).map_err(err);
    }
    let parts: Vec<String> = coords
        .try_iter()?
        .map(|c| c.and_then(|c| c.str().map(|s| s.to_string())))
        .collect::<PyResult<_>>()?;
    PointQ::parse(&parts.join(",")).map_err(err)
}

fn betti(b: Option<Vec<u64>>, d: usize) -> PyResult<BettiVector> {
    match b {
        Some(v) => BettiVector::new(v).map_err(err),
        None => Ok(BettiVector::top_only(d)),
    }
}

/// Hessian quadratic form of a homogeneous polynomial.
#[pyclass(name = "Hessian", module = "symdeg", frozen)]
struct PyHessian {
    inner: symdeg_core::HessianForm,
    vars: Vec<String>,
}

#[pymethods]
impl PyHessian {
    #[new]
    #[pyo3(signature = (poly, vars = None))]
    fn new(poly: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        let (f, vars) = self::poly(poly, vars)?;
        let inner = build_hessian(&f).map_err(err)?;
        Ok(PyHessian { inner, vars })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn polynomial(&self) -> String {
        self.inner.polynomial().to_string_with(&self.vars)
    }

    /// Entries as strings in the variable names.
    fn matrix(&self) -> Vec<Vec<String>> {
        self.inner
            .matrix()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|p| p.to_string_with(&self.vars)).collect())
            .collect()
    }

    fn rank_at(&self, point: &Bound<'_, PyAny>) -> PyResult<usize> {
        self.inner.rank_at(&self::point(point)?).map_err(err)
    }

    /// `{rank: [point, ...]}`; integer coordinates stay ints, others are strings.
    fn stratify(&self, py: Python<'_>, points: Vec<Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let pts: Vec<PointQ> = points.iter().map(point).collect::<PyResult<_>>()?;
        let s = self.inner.stratify(&pts).map_err(err)?;
        let dict = PyDict::new(py);
        for (rank, bucket) in &s.ranks {
            dict.set_item(rank, report(py, bucket)?)?;
        }
        Ok(dict.into_any().unbind())
    }

    #[pyo3(signature = (seed = 0, budget = 3))]
    fn generic_rank(&self, seed: u64, budget: usize) -> usize {
        self.inner.generic_rank_ambient(SampleConfig { seed, budget }).rank
    }

    /// Returns `(rank, rows, cols)` of the certifying minor.
    #[pyo3(signature = (seed = 0, budget = 3))]
    fn generic_rank_on_hypersurface(
        &self,
        seed: u64,
        budget: usize,
    ) -> PyResult<(usize, Vec<usize>, Vec<usize>)> {
        let g = self
            .inner
            .generic_rank_on_hypersurface(SampleConfig { seed, budget })
            .map_err(err)?;
        Ok((g.rank, g.certificate.rows, g.certificate.cols))
    }

    fn __repr__(&self) -> String {
        format!("Hessian({:?})", self.polynomial())
    }
}

#[pyfunction]
#[pyo3(signature = (poly, vars = None, seed = 0, budget = 3))]
fn dual_dimension(poly: &str, vars: Option<Vec<String>>, seed: u64, budget: usize) -> PyResult<usize> {
    let (f, _) = self::poly(poly, vars)?;
    dual::dual_dimension(&f, SampleConfig { seed, budget }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (poly, point, vars = None))]
fn rank_relation(
    py: Python<'_>,
    poly: &str,
    point: &Bound<'_, PyAny>,
    vars: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let (f, _) = self::poly(poly, vars)?;
    let rep = dual::rank_relation_check(&f, &self::point(point)?).map_err(err)?;
    report(py, &rep)
}

#[pyfunction]
fn quad_betti(r: usize) -> PyResult<Vec<usize>> {
    let data = quadric::QuadricFiberData::new(r).map_err(err)?;
    Ok((0..=data.dim()).map(|i| quadric::quadric_betti(r, i)).collect())
}

#[pyfunction]
fn lh_quadric_dim(betti: Vec<u64>, r: usize, k: usize) -> PyResult<u64> {
    Ok(quadric::lh_quadric_dim(&BettiVector::new(betti).map_err(err)?, r, k))
}

#[pyfunction]
fn lh_projective_dim(betti: Vec<u64>, m: usize, k: usize) -> PyResult<u64> {
    Ok(quadric::lh_projective_dim(&BettiVector::new(betti).map_err(err)?, m, k))
}

#[pyfunction]
#[pyo3(signature = (r, d, betti = None))]
fn nonsurjectivity_certificate(
    py: Python<'_>,
    r: usize,
    d: usize,
    betti: Option<Vec<u64>>,
) -> PyResult<Py<PyAny>> {
    let c = quadric::nonsurjectivity_certificate(&self::betti(betti, d)?, r, d).map_err(err)?;
    report(py, &c)
}

#[pyfunction]
#[pyo3(signature = (r, d, betti = None))]
fn torsion_certificate(
    py: Python<'_>,
    r: usize,
    d: usize,
    betti: Option<Vec<u64>>,
) -> PyResult<Py<PyAny>> {
    let c = quadric::torsion_certificate(&self::betti(betti, d)?, r, d).map_err(err)?;
    if !c.holds() {
        return Err(PyRuntimeError::new_err("torsion certificate does not check"));
    }
    report(py, &c)
}

#[pyfunction]
#[pyo3(signature = (big_n, r, d, betti = None))]
fn replay_main_theorem(
    py: Python<'_>,
    big_n: usize,
    r: usize,
    d: usize,
    betti: Option<Vec<u64>>,
) -> PyResult<Py<PyAny>> {
    let rep = bounds::replay_main_theorem(big_n, r, d, &self::betti(betti, d)?).map_err(err)?;
    report(py, &rep)
}

#[pyfunction]
fn main_bound(big_n: usize, r: usize) -> PyResult<usize> {
    bounds::main_bound(big_n, r).map_err(err)
}

#[pyfunction]
fn corollary_threshold(py: Python<'_>, big_n: usize, r: usize) -> PyResult<Py<PyAny>> {
    report(py, &bounds::corollary_threshold(big_n, r).map_err(err)?)
}

#[pyfunction]
fn sym_stratum_dim(big_n: usize, r: usize) -> PyResult<u64> {
    bounds::sym_stratum_dim(big_n, r).map_err(err)
}

#[pymodule]
fn symdeg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHessian>()?;
    m.add_function(wrap_pyfunction!(dual_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(rank_relation, m)?)?;
    m.add_function(wrap_pyfunction!(quad_betti, m)?)?;
    m.add_function(wrap_pyfunction!(lh_quadric_dim, m)?)?;
    m.add_function(wrap_pyfunction!(lh_projective_dim, m)?)?;
    m.add_function(wrap_pyfunction!(nonsurjectivity_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(replay_main_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(main_bound, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(sym_stratum_dim, m)?)?;
    Ok(())
}
