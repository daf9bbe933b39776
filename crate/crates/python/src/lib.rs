//! Python bindings. Rationals are accepted as anything whose `str()` parses
//! as `p/q` (ints, `Fraction`s, strings) and are returned as `Fraction`s.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use tropcurve::certify::{castelnuovo_bound as castelnuovo, certify_with, first_betti};
use tropcurve::document::{parse_curve, write_curve};
use tropcurve::gallery::{gen_example7, gen_random_balanced, gen_random_tree, gen_tropical_line};
use tropcurve::paths::{path_family_for_face, TieRule};
use tropcurve::rational::parse_rat;
use tropcurve::saturated::{degree, is_saturated, measure_density};
use tropcurve::saturation::{decompose as decompose_weight, saturate as saturate_curve};
use tropcurve::validate::{validate as validate_curve, Level};
use tropcurve::{Error, Rat, TropicalCurve};

create_exception!(pytropcurve, PreconditionError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    use Error::*;
    match e {
        NonTransversal(_) | VertexOnBoundary(_) | NotSaturated | DegenerateSlice(_)
        | PreconditionViolated(_) | StuckVertex(_) | CollarFailure(_) | SkeletonRay(_)
        | DegenerateCurve(_) | RegionNotContained => PreconditionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let s: String = obj.str()?.extract()?;
    parse_rat(s.trim()).map_err(PyValueError::new_err)
}

fn to_rats(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rat>> {
    objs.iter().map(to_rat).collect()
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, p: &[Rat]) -> PyResult<Bound<'py, PyList>> {
    let items = p.iter().map(|r| fraction(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn tie_rule(tie: &str) -> PyResult<TieRule> {
    tie.parse().map_err(err)
}

/// A weighted balanced tropical curve in a polyhedral region.
#[pyclass(name = "Curve", module = "pytropcurve", frozen)]
struct PyCurve {
    inner: TropicalCurve,
}

fn wrap(inner: TropicalCurve) -> PyCurve {
    PyCurve { inner }
}

#[pymethods]
impl PyCurve {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_curve(text)
            .map(wrap)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        write_curve(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.vertices().len()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.edges().len()
    }

    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyList>>> {
        self.inner.vertices().iter().map(|v| fractions(py, v)).collect()
    }

    /// `(start, end, direction, multiplicity)` of each edge clipped to the region.
    fn segments<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyList>, Bound<'py, PyList>, Vec<BigInt>, BigInt)>> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                let ext = self.inner.extent(e.id).map_err(err)?;
                Ok((
                    fractions(py, &ext.start())?,
                    fractions(py, &ext.end())?,
                    e.weight.direction().to_vec(),
                    e.weight.multiplicity().clone(),
                ))
            })
            .collect()
    }

    fn area<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.area().map_err(err)?)
    }

    /// Violations as `KIND subject detail` strings; empty when valid.
    #[pyo3(signature = (strict = true))]
    fn validate(&self, strict: bool) -> Vec<String> {
        let level = if strict { Level::Strict } else { Level::Lenient };
        validate_curve(&self.inner, level)
            .violations
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn is_saturated(&self) -> PyResult<bool> {
        Ok(is_saturated(&self.inner).map_err(err)?.saturated)
    }

    fn degree(&self) -> PyResult<BigInt> {
        degree(&self.inner).map_err(err)
    }

    /// Returns the saturated curve and the surgery log as a JSON string.
    fn saturate(&self, delta: &Bound<'_, PyAny>) -> PyResult<(PyCurve, String)> {
        let (g, log) = saturate_curve(&self.inner, &to_rat(delta)?).map_err(err)?;
        let log = serde_json::to_string(&log).expect("surgery logs serialize");
        Ok((wrap(g), log))
    }

    /// Edge ids of each path starting on the face `{x_dir = 0}` (1-based `dir`).
    #[pyo3(signature = (dir, tie = "id"))]
    fn paths(&self, dir: usize, tie: &str) -> PyResult<Vec<Vec<usize>>> {
        if dir == 0 || dir > self.inner.dim() {
            return Err(PyValueError::new_err(format!("dir must be between 1 and {}", self.inner.dim())));
        }
        let fam = path_family_for_face(&self.inner, dir - 1, tie_rule(tie)?).map_err(err)?;
        Ok(fam
            .paths
            .iter()
            .map(|p| p.segments.iter().map(|s| s.edge).collect())
            .collect())
    }

    /// The full certificate as a JSON string.
    #[pyo3(signature = (delta, area_budget, tie = "id"))]
    fn certify(&self, delta: &Bound<'_, PyAny>, area_budget: &Bound<'_, PyAny>, tie: &str) -> PyResult<String> {
        let c = certify_with(&self.inner, &to_rat(delta)?, &to_rat(area_budget)?, tie_rule(tie)?).map_err(err)?;
        Ok(serde_json::to_string(&c).expect("certificates serialize"))
    }

    /// `(density, predicted)` of the slice `{x_dir = at}`.
    fn slice_density(&self, dir: usize, at: &Bound<'_, PyAny>) -> PyResult<(BigInt, BigInt)> {
        if dir == 0 || dir > self.inner.dim() {
            return Err(PyValueError::new_err(format!("dir must be between 1 and {}", self.inner.dim())));
        }
        let d = measure_density(&self.inner, dir - 1, &to_rat(at)?).map_err(err)?;
        Ok((d.density, d.predicted))
    }

    /// `(components, b1)` of the vertex graph.
    fn betti(&self) -> (usize, usize) {
        let b = first_betti(&self.inner);
        (b.components, b.b1)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(dim={}, vertices={}, edges={})",
            self.inner.dim(),
            self.inner.vertices().len(),
            self.inner.edges().len()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (n = 2, apex = None))]
fn tropical_line(n: usize, apex: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<PyCurve> {
    let apex = match apex {
        Some(a) => to_rats(&a)?,
        None => vec![Rat::new(1.into(), (n as i64 + 1).into()); n],
    };
    gen_tropical_line(n, &apex).map(wrap).map_err(err)
}

#[pyfunction]
fn example7(levels: u32) -> PyResult<PyCurve> {
    gen_example7(levels).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, seed, complexity = 2))]
fn random_balanced(n: usize, seed: u64, complexity: usize) -> PyResult<PyCurve> {
    gen_random_balanced(n, seed, complexity).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, seed, complexity = 3, delta = None))]
fn random_tree(n: usize, seed: u64, complexity: usize, delta: Option<Bound<'_, PyAny>>) -> PyResult<PyCurve> {
    let delta = match delta {
        Some(d) => to_rat(&d)?,
        None => Rat::new(1.into(), 4.into()),
    };
    gen_random_tree(n, seed, complexity, &delta).map(wrap).map_err(err)
}

/// Coefficients `a₀..aₙ ≥ 0`, one of them zero, with `w = a₀(1,…,1) − Σ aᵢeᵢ`.
#[pyfunction]
fn decompose(w: Vec<BigInt>) -> Vec<BigInt> {
    decompose_weight(&w).a
}

#[pyfunction]
fn castelnuovo_bound(degree: BigInt, dim: usize) -> PyResult<BigInt> {
    castelnuovo(&degree, dim).map_err(err)
}

#[pymodule]
fn pytropcurve(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurve>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add_function(wrap_pyfunction!(tropical_line, m)?)?;
    m.add_function(wrap_pyfunction!(example7, m)?)?;
    m.add_function(wrap_pyfunction!(random_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(random_tree, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(castelnuovo_bound, m)?)?;
    Ok(())
}
